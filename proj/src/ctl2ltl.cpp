#include "synthkit/ctl2ltl.hpp"

#include <algorithm>
#include <set>

#include "synthkit/automaton.hpp"
#include "synthkit/modelcheck.hpp"

namespace sk {

namespace {

std::set<std::string> io_set(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
    std::set<std::string> s(inputs.begin(), inputs.end());
    s.insert(outputs.begin(), outputs.end());
    return s;
}

// per entry: NBW states of existential bodies; with `skip_free`, accepting
// true-loop states are not counted
std::vector<int> entry_sizes(const SubformulaTable& t, const std::vector<std::string>& inputs,
                             const std::vector<std::string>& outputs, bool skip_free = false) {
    std::vector<int> sizes;
    std::vector<std::string> earlier;
    for (auto& e : t.entries) {
        std::vector<std::string> props = inputs;
        props.insert(props.end(), outputs.begin(), outputs.end());
        NbwOptions o;
        o.max_props = 64;
        o.complete = false;
        for (auto& a : atoms_of(e.body))
            if (std::find(earlier.begin(), earlier.end(), a) != earlier.end()) {
                props.push_back(a);
                o.monotone.insert(a);
            }
        int n = 0;
        if (e.existential) {
            WordAutomaton a = ltl_to_nbw(e.body, props, o);
            n = count_nonsink_states(a);
            if (skip_free)
                for (int q = 0; q < a.num_states; ++q)
                    if (a.is_true_loop(q) && contains(a.acc.set(), q)) --n;
        }
        sizes.push_back(n);
        earlier.push_back(e.prop);
    }
    return sizes;
}

int bits_for(int k) {
    int w = 0;
    while ((1 << w) < k + 1) ++w;
    return w;
}

}  // namespace

int witness_count(const Formula& f, const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
    int k = 0;
    for (int s : entry_sizes(decompose(f, io_set(inputs, outputs)), inputs, outputs)) k += s;
    return k;
}

int witness_count(const Specification& spec) { return witness_count(spec.formula, spec.inputs, spec.outputs); }

int sufficient_witnesses(const Formula& f, const std::vector<std::string>& inputs,
                         const std::vector<std::string>& outputs) {
    SubformulaTable t = decompose(f, io_set(inputs, outputs));
    bool any = false;
    for (auto& e : t.entries) any |= e.existential;
    if (!any) return 0;
    int k = 0;
    for (int s : entry_sizes(t, inputs, outputs, true)) k += s;
    return std::max(k, 1);
}

int sufficient_witnesses(const Specification& spec) {
    return sufficient_witnesses(spec.formula, spec.inputs, spec.outputs);
}

Reduction reduce(const Specification& spec, std::optional<int> k_override) {
    Reduction r;
    r.table = decompose(spec.formula, io_set(spec.inputs, spec.outputs));
    const int k = k_override ? *k_override : witness_count(spec);
    if (k < 0) throw SynthError("witness count must be nonnegative");

    std::set<std::string> used = io_set(spec.inputs, spec.outputs);
    for (auto& e : r.table.entries) used.insert(e.prop);
    for (auto& a : atoms_of(spec.formula)) used.insert(a);
    auto fresh = [&](const std::string& base) {
        std::string n = base;
        for (int c = 1; used.count(n); ++c) n = base + "_" + std::to_string(c);
        used.insert(n);
        return n;
    };

    WitnessLayout& L = r.layout;
    L.k = k;
    L.width = bits_for(k);
    for (int j = 1; j <= k; ++j) {
        std::vector<std::string> row;
        for (auto& i : spec.inputs) row.push_back(fresh("d" + std::to_string(j) + "_" + i));
        L.d.push_back(row);
    }
    for (auto& e : r.table.entries) {
        if (!e.existential) {
            L.a.push_back(e.prop);
            continue;
        }
        std::vector<std::string> bits;
        for (int b = 0; b < L.width; ++b) bits.push_back(fresh("v_" + e.prop + "_" + std::to_string(b)));
        L.v[e.prop] = bits;
    }

    auto v_is = [&](const std::string& p, int j) {
        std::vector<Formula> lits;
        const auto& bits = L.v.at(p);
        for (int b = 0; b < L.width; ++b) lits.push_back(atom(bits[b], !(j >> b & 1)));
        return mk_and(std::move(lits));
    };
    std::map<std::string, Formula> sub;
    for (auto& [p, bits] : L.v) {
        std::vector<Formula> alts;
        for (int j = 1; j <= k; ++j) alts.push_back(v_is(p, j));
        sub[p] = mk_or(std::move(alts));
    }
    std::vector<Formula> follow;
    for (int j = 1; j <= k; ++j) {
        std::vector<Formula> eqs;
        for (std::size_t i = 0; i < spec.inputs.size(); ++i) eqs.push_back(iff(atom(L.d[j - 1][i]), atom(spec.inputs[i])));
        follow.push_back(globally(mk_and(std::move(eqs))));
    }

    std::vector<Formula> conj{substitute(r.table.top, sub)};
    for (auto& e : r.table.entries) {
        Formula body = substitute(e.body, sub);
        if (e.existential) {
            for (int j = 1; j <= k; ++j)
                conj.push_back(globally(implies(v_is(e.prop, j), implies(follow[j - 1], body))));
        } else {
            conj.push_back(globally(implies(atom(e.prop), body)));
        }
    }

    Specification& out = r.spec;
    out.inputs = spec.inputs;
    out.outputs = spec.outputs;
    out.outputs.insert(out.outputs.end(), L.a.begin(), L.a.end());
    for (auto& e : r.table.entries)
        if (e.existential) out.outputs.insert(out.outputs.end(), L.v[e.prop].begin(), L.v[e.prop].end());
    for (auto& row : L.d) out.outputs.insert(out.outputs.end(), row.begin(), row.end());
    out.semantics = spec.semantics;
    out.formula = path_a(to_pnf(mk_and(std::move(conj))));
    return r;
}

Machine project(const Machine& m, const Specification& original) { return m.project(original.outputs); }

SynthResult synth_via_ltl(const SynthProblem& p, std::optional<int> k) {
    const int full = sufficient_witnesses(p.spec);
    const int used = k ? *k : p.dual_race ? full : witness_count(p.spec);
    Reduction red = reduce(p.spec, used);
    SynthProblem q = p;
    q.spec = red.spec;
    q.encoding = Encoding::Ltl;
    SynthResult r = synth_loop(q);
    if (r.status == SynthResult::Status::Realizable) {
        r.machine = project(r.machine, p.spec).canonical();
        auto mc = mc_ctl(r.machine, p.spec.formula);
        if (!mc.holds) throw SynthError("projected machine fails the original formula: " + mc.cex_text);
    } else if (r.status == SynthResult::Status::Unrealizable && used < full) {
        r.status = SynthResult::Status::BoundExhausted;
        r.note = "inconclusive at k=" + std::to_string(used) + " (complete from k=" + std::to_string(full) +
                 "); dual machine of size " + std::to_string(r.size) + " found";
    }
    return r;
}

}  // namespace sk
