#include "synthkit/modelcheck.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sk {

std::string lasso_text(const Lasso& l, const std::vector<std::string>& props) {
    auto seq = [&](const std::vector<Letter>& v) {
        std::string s;
        for (auto x : v) s += "{" + letter_cube_text(x, props) + "} ";
        return s;
    };
    return "stem: " + seq(l.stem) + "loop: " + seq(l.loop);
}

namespace {

// synchronous product of a machine with a word automaton whose props are
// machine inputs, outputs and optional per-state labels
class Product {
public:
    Product(const Machine& m, const WordAutomaton& a, const std::vector<std::string>& label_names,
            const std::vector<std::vector<char>>* labels)
        : m_(m), a_(a), labels_(labels), src_(a.by_source()) {
        for (auto& p : a.props) {
            Source s{0, -1};
            if (auto it = std::find(m.inputs.begin(), m.inputs.end(), p); it != m.inputs.end()) {
                s = {0, static_cast<int>(it - m.inputs.begin())};
            } else if (auto jt = std::find(m.outputs.begin(), m.outputs.end(), p); jt != m.outputs.end()) {
                s = {1, static_cast<int>(jt - m.outputs.begin())};
            } else if (auto kt = std::find(label_names.begin(), label_names.end(), p); kt != label_names.end()) {
                s = {2, static_cast<int>(kt - label_names.begin())};
            } else {
                throw McError("proposition '" + p + "' is not a machine proposition");
            }
            map_.push_back(s);
        }
        nq_ = a.num_states;
    }

    int size() const { return m_.num_states * nq_; }
    int node(int t, int q) const { return t * nq_ + q; }
    bool accepting(int v) const { return contains(a_.acc.set(), v % nq_); }

    Letter aut_letter(int t, Letter d) const {
        const Letter o = m_.output(t, d);
        Letter l = 0;
        for (std::size_t k = 0; k < map_.size(); ++k) {
            bool bit = false;
            switch (map_[k].kind) {
                case 0: bit = d >> map_[k].idx & 1; break;
                case 1: bit = o >> map_[k].idx & 1; break;
                default: bit = (*labels_)[t][map_[k].idx] != 0; break;
            }
            if (bit) l |= Letter{1} << k;
        }
        return l;
    }

    // (machine joint letter, successor node)
    std::vector<std::pair<Letter, int>> succ(int v) const {
        std::vector<std::pair<Letter, int>> r;
        const int t = v / nq_, q = v % nq_;
        for (Letter d = 0; d < m_.dirs(); ++d) {
            const Letter al = aut_letter(t, d);
            const int t2 = m_.next[t][d];
            for (int i : src_[q])
                if (a_.trans[i].guard.matches(al)) r.emplace_back(m_.joint(t, d), node(t2, a_.trans[i].dst));
        }
        return r;
    }

    // nodes with an accepting run
    std::vector<char> nonempty() const {
        const int n = size();
        std::vector<std::vector<int>> pred(n);
        for (int v = 0; v < n; ++v)
            for (auto& [l, w] : succ(v)) pred[w].push_back(v);
        std::vector<char> z(n, 1);
        for (;;) {
            std::vector<char> nz(n, 0);
            std::vector<int> work;
            for (int v = 0; v < n; ++v)
                if (z[v] && accepting(v))
                    for (int p : pred[v])
                        if (!nz[p]) {
                            nz[p] = 1;
                            work.push_back(p);
                        }
            while (!work.empty()) {
                int v = work.back();
                work.pop_back();
                for (int p : pred[v])
                    if (!nz[p]) {
                        nz[p] = 1;
                        work.push_back(p);
                    }
            }
            if (nz == z) return z;
            z = std::move(nz);
        }
    }

private:
    struct Source {
        int kind;  // 0 input, 1 output, 2 label
        int idx;
    };
    const Machine& m_;
    const WordAutomaton& a_;
    const std::vector<std::vector<char>>* labels_;
    std::vector<std::vector<int>> src_;
    std::vector<Source> map_;
    int nq_ = 1;
};

struct Frame {
    int v;
    std::vector<std::pair<Letter, int>> s;
    std::size_t i = 0;
};

bool nested_dfs(const Product& p, const std::vector<int>& starts, Lasso& lasso) {
    const int n = p.size();
    std::vector<char> v1(n, 0), v2(n, 0), on(n, 0);
    std::vector<int> pos(n, -1);
    std::vector<Frame> st;
    for (int s0 : starts) {
        if (v1[s0]) continue;
        v1[s0] = 1;
        st.push_back({s0, p.succ(s0)});
        on[s0] = 1;
        pos[s0] = 0;
        while (!st.empty()) {
            Frame& f = st.back();
            if (f.i < f.s.size()) {
                const int w = f.s[f.i++].second;
                if (!v1[w]) {
                    v1[w] = 1;
                    on[w] = 1;
                    pos[w] = static_cast<int>(st.size());
                    st.push_back({w, p.succ(w)});
                }
                continue;
            }
            if (p.accepting(f.v)) {
                std::vector<Frame> in{{f.v, p.succ(f.v)}};
                while (!in.empty()) {
                    Frame& g = in.back();
                    if (g.i >= g.s.size()) {
                        in.pop_back();
                        continue;
                    }
                    auto [l, w] = g.s[g.i++];
                    if (on[w]) {
                        const int k = pos[w];
                        for (int j = 0; j < k; ++j) lasso.stem.push_back(st[j].s[st[j].i - 1].first);
                        for (std::size_t j = k; j + 1 < st.size(); ++j) lasso.loop.push_back(st[j].s[st[j].i - 1].first);
                        for (std::size_t j = 0; j + 1 < in.size(); ++j) lasso.loop.push_back(in[j].s[in[j].i - 1].first);
                        lasso.loop.push_back(l);
                        return true;
                    }
                    if (!v2[w]) {
                        v2[w] = 1;
                        in.push_back({w, p.succ(w)});
                    }
                }
            }
            on[st.back().v] = 0;
            st.pop_back();
        }
    }
    return false;
}

void check_inputs(const Machine& m, const McOptions& opt) {
    if (m.inputs.size() > opt.max_inputs)
        throw AutomatonError(AutomatonError::Kind::AlphabetTooLarge,
                             "machine has " + std::to_string(m.inputs.size()) + " inputs, cap is " +
                                 std::to_string(opt.max_inputs));
}

NbwOptions mc_nbw_options() {
    NbwOptions o;
    o.max_props = 64;
    o.complete = false;
    return o;
}

}  // namespace

McResult mc_ltl(const Machine& m, const Formula& phi, const McOptions& opt) {
    check_inputs(m, opt);
    m.validate();
    WordAutomaton a = ltl_to_nbw(negate(phi), m.props(), mc_nbw_options());
    Product p(m, a, {}, nullptr);
    std::vector<int> starts;
    for (int t : m.init) starts.push_back(p.node(t, a.initial));
    McResult r;
    if (nested_dfs(p, starts, r.cex)) {
        r.holds = false;
        r.cex_text = lasso_text(r.cex, m.props());
    }
    return r;
}

std::vector<char> ctl_labels(const Machine& m, const Formula& f, const McOptions& opt) {
    check_inputs(m, opt);
    m.validate();
    std::set<std::string> taken;
    for (auto& p : m.props()) taken.insert(p);
    SubformulaTable table = decompose(f, taken);
    std::vector<std::string> names;
    std::vector<std::vector<char>> labels(m.num_states);
    for (auto& e : table.entries) {
        std::vector<std::string> props = m.props();
        for (auto& at : atoms_of(e.body))
            if (std::find(names.begin(), names.end(), at) != names.end()) props.push_back(at);
        WordAutomaton a = ltl_to_nbw(e.existential ? e.body : negate(e.body), props, mc_nbw_options());
        Product p(m, a, names, &labels);
        auto good = p.nonempty();
        for (int t = 0; t < m.num_states; ++t) {
            const bool g = good[p.node(t, a.initial)];
            labels[t].push_back(e.existential ? g : !g);
        }
        names.push_back(e.prop);
    }
    std::vector<char> out(m.num_states);
    for (int t = 0; t < m.num_states; ++t) {
        std::map<std::string, Formula> sub;
        for (std::size_t i = 0; i < names.size(); ++i) sub[names[i]] = labels[t][i] ? mk_true() : mk_false();
        for (std::size_t o = 0; o < m.outputs.size(); ++o) {
            if (m.kind == Semantics::Mealy) continue;
            sub[m.outputs[o]] = (m.out[t][0] >> o & 1) ? mk_true() : mk_false();
        }
        Formula v = substitute(table.top, sub);
        if (!is_true(v) && !is_false(v))
            throw McError("state formula does not evaluate at state level: " + to_string(v));
        out[t] = is_true(v);
    }
    return out;
}

McResult mc_ctl(const Machine& m, const Formula& f, const McOptions& opt) {
    auto labels = ctl_labels(m, f, opt);
    McResult r;
    for (int t : m.init)
        if (!labels[t]) {
            r.holds = false;
            r.cex_text = "formula fails at initial state " + std::to_string(t);
            break;
        }
    return r;
}

bool mc_aht(const HesitantTreeAutomaton& h, const Machine& m) {
    if (m.kind != Semantics::Moore) throw McError("AHT acceptance is defined for Moore machines");
    if (h.inputs != m.inputs || h.outputs != m.outputs) throw McError("AHT and machine propositions differ");
    m.validate();
    const int nt = m.num_states;
    std::vector<std::vector<char>> win(h.num_states, std::vector<char>(nt, 0));
    std::vector<int> order(h.partitions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return h.partitions[a].rank < h.partitions[b].rank; });
    for (int pi : order) {
        const Partition& part = h.partitions[pi];
        using Set = std::vector<std::vector<char>>;
        auto eval = [&](int q, int t, const Set& x) {
            return pb_eval(h.delta[q][m.out[t][0]], [&](Letter d, int q2) {
                const int t2 = m.next[t][d];
                return h.part_of[q2] == pi ? x[q2][t2] != 0 : win[q2][t2] != 0;
            });
        };
        const bool buchi = part.kind == PartKind::N;
        Set z(h.num_states, std::vector<char>(nt, buchi ? 1 : 0));
        for (;;) {
            Set y(h.num_states, std::vector<char>(nt, buchi ? 0 : 1));
            for (;;) {
                Set ny = y;
                for (int q : part.states)
                    for (int t = 0; t < nt; ++t) {
                        if (buchi)
                            ny[q][t] = (h.acc[q] && eval(q, t, z)) || eval(q, t, y);
                        else
                            ny[q][t] = (!h.acc[q] && eval(q, t, y)) || eval(q, t, z);
                    }
                if (ny == y) break;
                y = std::move(ny);
            }
            if (y == z) break;
            z = std::move(y);
        }
        for (int q : part.states) win[q] = z[q];
    }
    return std::all_of(m.init.begin(), m.init.end(), [&](int t) { return win[h.initial][t] != 0; });
}

}  // namespace sk
