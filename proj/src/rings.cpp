#include "synthkit/rings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "synthkit/automaton.hpp"
#include "synthkit/modelcheck.hpp"

namespace sk {

const char* to_string(Scheduler s) {
    switch (s) {
        case Scheduler::Synchronous: return "synchronous";
        case Scheduler::Interleaving: return "interleaving";
        case Scheduler::FullyAsynchronous: return "asynchronous";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

bool has_next(const Formula& f) {
    if (f->op == Op::Next) return true;
    return std::any_of(f->kids.begin(), f->kids.end(), has_next);
}

Formula rename_atoms(const Formula& f, const std::function<std::string(const std::string&)>& fn) {
    std::map<std::string, Formula> sub;
    for (auto& a : atoms_of(f)) sub[a] = atom(fn(a));
    return substitute(f, sub);
}

std::string ix(const std::string& base, int i) { return base + "_" + std::to_string(i); }

Formula a(const std::string& base, int i) { return atom(ix(base, i)); }

// p -> p_i for every atom
Formula index_formula(const Formula& f, int i) {
    return rename_atoms(f, [&](const std::string& p) { return ix(p, i); });
}

Formula gf(Formula f) { return globally(eventually(std::move(f))); }

// token discipline of process i
Formula discipline(int i) {
    return mk_and({globally(implies(a("snd", i), a("tok", i))),
                   globally(implies(a("tok", i), iff(a("snd", i), next(mk_not(a("tok", i)))))),
                   globally(implies(mk_not(a("tok", i)), iff(a("rcv", i), next(a("tok", i)))))});
}

Formula release(const Formula& a_loc, int i) {
    Formula g = globally(implies(a("tok", i), eventually(a("snd", i))));
    return a_loc ? implies(index_formula(a_loc, i), g) : g;
}

const std::set<std::string> kReserved{"tok", "snd", "rcv", "sch"};

}  // namespace

// ---------------------------------------------------------------------------
// indexed formulas

bool split_indexed(const std::string& at, std::string& base, std::string& var) {
    const auto u = at.rfind('_');
    if (u == std::string::npos || u == 0 || u + 1 == at.size()) return false;
    base = at.substr(0, u);
    var = at.substr(u + 1);
    return true;
}

std::string IndexedFormula::to_text() const {
    std::string s = "forall ";
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        const auto& v = prefix[k];
        if (k) s += ", ";
        switch (v.cond) {
            case IndexVar::Cond::None: s += v.name; break;
            case IndexVar::Cond::Neq: s += v.name + " != " + v.ref; break;
            case IndexVar::Cond::Succ: s += v.name + " = " + v.ref + "+1"; break;
        }
    }
    return s + " . " + to_string(body);
}

IndexedFormula parse_indexed(const std::string& text) {
    static const std::regex head(R"(^\s*forall\s+([^.]*)\.([\s\S]*)$)");
    std::smatch m;
    if (!std::regex_match(text, m, head)) throw RingError(RingError::Kind::Syntax, "expected 'forall <vars> . <body>'");
    IndexedFormula f;
    std::set<std::string> bound;
    auto bind = [&](const std::string& v, IndexVar::Cond c, const std::string& ref) {
        if (bound.count(v)) throw RingError(RingError::Kind::Syntax, "index variable '" + v + "' bound twice");
        bound.insert(v);
        f.prefix.push_back({v, c, ref});
    };
    static const std::regex var(R"(^[A-Za-z]\w*$)");
    static const std::regex neq(R"(^([A-Za-z]\w*)\s*!=\s*([A-Za-z]\w*)$)");
    static const std::regex succ(R"(^([A-Za-z]\w*)\s*=\s*([A-Za-z]\w*)\s*\+\s*1$)");
    std::stringstream items(m[1].str());
    std::string item;
    while (std::getline(items, item, ',')) {
        item = trim(item);
        std::smatch im;
        if (std::regex_match(item, im, var)) {
            bind(item, IndexVar::Cond::None, "");
        } else if (std::regex_match(item, im, neq)) {
            const std::string x = im[1], y = im[2];
            if (!bound.count(x) && !bound.count(y)) {
                bind(x, IndexVar::Cond::None, "");
                bind(y, IndexVar::Cond::Neq, x);
            } else if (!bound.count(x)) {
                bind(x, IndexVar::Cond::Neq, y);
            } else if (!bound.count(y)) {
                bind(y, IndexVar::Cond::Neq, x);
            } else {
                throw RingError(RingError::Kind::Syntax, "condition '" + item + "' binds no variable");
            }
        } else if (std::regex_match(item, im, succ)) {
            const std::string x = im[1], y = im[2];
            if (!bound.count(y)) throw RingError(RingError::Kind::Syntax, "'" + y + "' must be bound before '" + item + "'");
            bind(x, IndexVar::Cond::Succ, y);
        } else {
            throw RingError(RingError::Kind::Syntax, "bad index declaration '" + item + "'");
        }
    }
    if (f.prefix.empty()) throw RingError(RingError::Kind::Syntax, "empty index prefix");
    try {
        f.body = to_pnf(parse_formula(m[2].str()));
    } catch (const SpecError& e) {
        throw RingError(RingError::Kind::Syntax, e.what());
    }
    for (auto& at : atoms_of(f.body)) {
        std::string base, v;
        if (!split_indexed(at, base, v) || !bound.count(v))
            throw RingError(RingError::Kind::UnsupportedShape,
                            "atom '" + at + "' is not indexed by a bound variable (global propositions are not supported)");
    }
    return f;
}

int cutoff_for(const IndexedFormula& f) {
    if (has_next(f.body)) throw RingError(RingError::Kind::UnsupportedShape, "X is not supported in ring bodies");
    const auto& p = f.prefix;
    using C = IndexVar::Cond;
    auto is = [&](std::size_t k, C c) { return p[k].cond == c && (c == C::None || p[k].ref == p[0].name); };
    if (p.size() == 1 && is(0, C::None)) return 2;
    if (p.size() == 2 && is(0, C::None) && is(1, C::Succ)) return 3;
    if (p.size() == 2 && is(0, C::None) && is(1, C::Neq)) return 4;
    if (p.size() == 3 && is(0, C::None) &&
        ((is(1, C::Neq) && is(2, C::Succ)) || (is(1, C::Succ) && is(2, C::Neq))))
        return 5;
    throw RingError(RingError::Kind::UnsupportedShape, "no cutoff known for prefix '" + f.to_text() + "'");
}

std::vector<std::vector<int>> index_tuples(const IndexedFormula& f, int n, bool representatives) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::map<std::string, std::size_t> pos;
    for (std::size_t k = 0; k < f.prefix.size(); ++k) pos[f.prefix[k].name] = k;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == f.prefix.size()) {
            out.push_back(cur);
            return;
        }
        const auto& v = f.prefix[k];
        for (int i = 1; i <= n; ++i) {
            if (k == 0 && representatives && i != 1) break;
            if (v.cond == IndexVar::Cond::Neq && cur[pos[v.ref]] == i) continue;
            if (v.cond == IndexVar::Cond::Succ && cur[pos[v.ref]] % n + 1 != i) continue;
            cur.push_back(i);
            rec(k + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Formula instantiate(const IndexedFormula& f, const std::vector<int>& idx) {
    std::map<std::string, int> val;
    for (std::size_t k = 0; k < f.prefix.size(); ++k) val[f.prefix[k].name] = idx[k];
    return rename_atoms(f.body, [&](const std::string& p) {
        std::string base, v;
        split_indexed(p, base, v);
        return ix(base, val.at(v));
    });
}

Formula strip_index(const IndexedFormula& f) {
    if (f.arity() != 1) throw RingError(RingError::Kind::UnsupportedShape, "only 1-indexed formulas can drop the index");
    return rename_atoms(f.body, [](const std::string& p) {
        std::string base, v;
        split_indexed(p, base, v);
        return base;
    });
}

// ---------------------------------------------------------------------------
// ring specs

std::vector<std::string> RingSpec::template_inputs() const {
    auto v = inputs;
    v.push_back("rcv");
    return v;
}

std::vector<std::string> RingSpec::template_outputs() const {
    auto v = outputs;
    v.push_back("tok");
    v.push_back("snd");
    return v;
}

RingSpec parse_ring_spec(const std::string& text) {
    std::string clean;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '#' || (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
            while (i < text.size() && text[i] != '\n') ++i;
        }
        if (i < text.size()) clean += text[i];
    }
    RingSpec rs;
    std::set<std::string> declared;
    auto idlist = [&](const std::string& body, std::vector<std::string>& dst) {
        std::stringstream ss(body);
        std::string id;
        while (std::getline(ss, id, ',')) {
            id = trim(id);
            if (id.empty()) continue;
            if (!std::regex_match(id, std::regex(R"([A-Za-z]\w*)")))
                throw RingError(RingError::Kind::Syntax, "bad identifier '" + id + "'");
            if (kReserved.count(id)) throw RingError(RingError::Kind::Syntax, "'" + id + "' is reserved");
            if (!declared.insert(id).second) throw RingError(RingError::Kind::Syntax, "'" + id + "' declared twice");
            dst.push_back(id);
        }
    };
    std::vector<std::pair<std::string, IndexedFormula*>> pending;
    std::stringstream ss(clean);
    std::string clause;
    std::vector<std::pair<bool, std::string>> formulas;
    while (std::getline(ss, clause, ';')) {
        clause = trim(clause);
        if (clause.empty()) continue;
        std::smatch m;
        if (std::regex_match(clause, m, std::regex(R"(^inputs\b([\s\S]*)$)")))
            idlist(m[1], rs.inputs);
        else if (std::regex_match(clause, m, std::regex(R"(^outputs\b([\s\S]*)$)")))
            idlist(m[1], rs.outputs);
        else if (std::regex_match(clause, m, std::regex(R"(^param\s+formula\b([\s\S]*)$)")))
            formulas.emplace_back(false, m[1]);
        else if (std::regex_match(clause, m, std::regex(R"(^param\s+assume\b([\s\S]*)$)")))
            formulas.emplace_back(true, m[1]);
        else
            throw RingError(RingError::Kind::Syntax, "unknown clause '" + clause.substr(0, 20) + "'");
    }
    for (auto& [assume, body] : formulas) {
        IndexedFormula f = parse_indexed(body);
        for (auto& at : atoms_of(f.body)) {
            std::string base, v;
            split_indexed(at, base, v);
            if (!declared.count(base) && !kReserved.count(base))
                throw RingError(RingError::Kind::Syntax, "undeclared proposition '" + base + "'");
        }
        if (assume) {
            if (rs.assumption) throw RingError(RingError::Kind::Syntax, "second assume clause");
            if (f.arity() != 1) throw RingError(RingError::Kind::UnsupportedShape, "assumptions must be 1-indexed");
            rs.assumption = f;
        } else {
            rs.guarantees.push_back(f);
        }
    }
    if (rs.guarantees.empty()) throw RingError(RingError::Kind::Syntax, "no 'param formula' clause");
    return rs;
}

// ---------------------------------------------------------------------------
// formula rewriting

Formula fairness_formula(int n, Scheduler sched) {
    if (sched == Scheduler::Synchronous) return mk_true();
    std::vector<Formula> ks;
    for (int i = 1; i <= n; ++i) {
        if (sched == Scheduler::FullyAsynchronous) {
            ks.push_back(gf(a("sch", i)));
            continue;
        }
        std::vector<Formula> only{a("sch", i)};
        for (int j = 1; j <= n; ++j)
            if (j != i) only.push_back(mk_not(a("sch", j)));
        ks.push_back(gf(mk_and(std::move(only))));
    }
    return mk_and(std::move(ks));
}

Formula ring_formula(const IndexedFormula& f, int n, const RingFormulaOptions& opt) {
    if (n < 1) throw RingError(RingError::Kind::UnsupportedShape, "ring size must be positive");
    std::vector<Formula> assm;
    if (opt.fairness) assm.push_back(fairness_formula(n, opt.scheduler));
    for (int i = 1; i <= n; ++i) assm.push_back(globally(iff(a("snd", i), a("rcv", i % n + 1))));
    std::vector<Formula> guar;
    for (auto& t : index_tuples(f, n, opt.representatives)) guar.push_back(instantiate(f, t));
    for (int i = 1; i <= n; ++i) {
        guar.push_back(discipline(i));
        guar.push_back(release(opt.a_loc, i));
    }
    return to_pnf(implies(mk_and(std::move(assm)), mk_and(std::move(guar))));
}

Formula strengthen(const Formula& al, const Formula& as, const Formula& gl, const Formula& gs) {
    return to_pnf(mk_and(implies(as, gs), implies(mk_and(al, as), gl)));
}

IndexedFormula localize(const IndexedFormula& asm_, const IndexedFormula& g) {
    if (asm_.arity() != 1 || g.arity() != 1)
        throw RingError(RingError::Kind::UnsupportedShape, "localization needs 1-indexed assumption and guarantee");
    const std::string v = g.prefix[0].name;
    Formula av = rename_atoms(asm_.body, [&](const std::string& p) {
        std::string base, x;
        split_indexed(p, base, x);
        return base + "_" + v;
    });
    IndexedFormula out = g;
    out.body = to_pnf(implies(mk_and(av, gf(atom("tok_" + v))), g.body));
    return out;
}

Formula localized_formula(const IndexedFormula& asm_, const IndexedFormula& g) {
    const Formula a1 = index_formula(strip_index(asm_), 1);
    const Formula g1 = index_formula(strip_index(g), 1);
    Formula lhs = mk_and(gf(a("sch", 1)), globally(iff(a("snd", 1), a("rcv", 2))));
    Formula rhs = mk_and({discipline(1), implies(a1, globally(implies(a("tok", 1), eventually(a("snd", 1))))),
                          implies(mk_and(a1, gf(a("tok", 1))), g1)});
    return to_pnf(implies(lhs, rhs));
}

Specification hub_abstract(const Formula& local, const Formula& a_loc, const RingSpec& rs, bool with_discipline) {
    Specification s;
    s.inputs = rs.template_inputs();
    s.outputs = rs.template_outputs();
    s.semantics = Semantics::Moore;
    Formula hub = mk_and(globally(implies(mk_not(atom("tok")), eventually(atom("rcv")))),
                         globally(implies(atom("tok"), mk_not(atom("rcv")))));
    Formula rel = globally(implies(atom("tok"), eventually(atom("snd"))));
    std::vector<Formula> guar{local, a_loc ? implies(a_loc, rel) : rel};
    if (with_discipline)
        guar.push_back(rename_atoms(discipline(1), [](const std::string& p) { return p.substr(0, p.rfind('_')); }));
    s.formula = path_a(to_pnf(implies(hub, mk_and(std::move(guar)))));
    return s;
}

// ---------------------------------------------------------------------------
// symbolic models

TemplateMachine::TemplateMachine(const RingSpec& rs, int n)
    : SymbolicMachine(Semantics::Moore, rs.template_inputs(), rs.template_outputs(), n) {
    if (n < 2) throw RingError(RingError::Kind::BadTemplate, "a template needs at least two states");
}

void TemplateMachine::declare(SmtQuery& q) const {
    SymbolicMachine::declare(q);
    auto tok = [&](const Term& t) { return out("tok", t, 0); };
    auto snd = [&](const Term& t) { return out("snd", t, 0); };
    q.add(tok(t_int(0)));
    q.add(t_not(tok(t_int(1))));
    const Letter rcv = Letter{1} << (inputs().size() - 1);
    for (int t = 0; t < size(); ++t) {
        const Term tt = t_int(t);
        q.add(t_implies(snd(tt), tok(tt)));
        for (Letter d = 0; d < num_dirs(); ++d) {
            const Term nx = tok(tau(tt, d));
            if (d & rcv) {
                q.add(t_implies(t_not(tok(tt)), nx));
            } else {
                q.add(t_implies(t_and(tok(tt), snd(tt)), t_not(nx)));
                q.add(t_implies(t_and(tok(tt), t_not(snd(tt))), nx));
                q.add(t_implies(t_not(tok(tt)), t_not(nx)));
            }
        }
    }
}

RingModel::RingModel(const SymbolicMachine& tmpl, int n, Scheduler sched, int local_inputs)
    : tm_(tmpl), n_(n), sched_(sched), nloc_(local_inputs) {
    if (n < 2) throw RingError(RingError::Kind::UnsupportedShape, "rings need at least two processes");
    if (sched == Scheduler::FullyAsynchronous)
        throw RingError(RingError::Kind::UnsupportedShape, "asynchronous rings are verified only, not synthesized");
    if (n * nloc_ > 12)
        throw AutomatonError(AutomatonError::Kind::AlphabetTooLarge, "ring input alphabet exceeds the enumeration cap");
    std::vector<int> cur(n, 0);
    for (;;) {
        nodes_.push_back(cur);
        int k = 0;
        while (k < n && ++cur[k] == tmpl.size()) cur[k++] = 0;
        if (k == n) break;
    }
}

std::vector<Term> RingModel::node_args(int node) const {
    std::vector<Term> r;
    for (int t : nodes_[node]) r.push_back(t_int(t));
    return r;
}

std::vector<int> RingModel::initial_nodes() const {
    std::vector<int> r;
    for (int p = 0; p < n_; ++p) {
        int idx = 0;
        for (int k = n_ - 1; k >= 0; --k) idx = idx * tm_.size() + (k == p ? 0 : 1);
        r.push_back(idx);
    }
    return r;
}

Letter RingModel::num_dirs() const {
    const Letter loc = Letter{1} << (n_ * nloc_);
    return sched_ == Scheduler::Interleaving ? loc * n_ : loc;
}

int RingModel::sched_of(Letter dir) const { return sched_ == Scheduler::Interleaving ? static_cast<int>(dir % n_) : -1; }

Letter RingModel::local_of(Letter dir, int proc) const {
    const Letter bits = sched_ == Scheduler::Interleaving ? dir / n_ : dir;
    return (bits >> (proc * nloc_)) & ((Letter{1} << nloc_) - 1);
}

std::vector<Term> RingModel::succ(int node, Letter dir) const {
    const auto& t = nodes_[node];
    const Letter rcv = Letter{1} << nloc_;
    std::vector<Term> s = node_args(node);
    auto snd = [&](int k) { return tm_.out("snd", t_int(t[k]), 0); };
    if (sched_ == Scheduler::Interleaving) {
        const int v = sched_of(dir), w = (v + 1) % n_;
        s[v] = tm_.tau(t_int(t[v]), local_of(dir, v));
        s[w] = t_ite(snd(v), tm_.tau(t_int(t[w]), local_of(dir, w) | rcv), t_int(t[w]));
    } else {
        for (int u = 0; u < n_; ++u) {
            const int p = (u + n_ - 1) % n_;
            s[u] = t_ite(snd(p), tm_.tau(t_int(t[u]), local_of(dir, u) | rcv), tm_.tau(t_int(t[u]), local_of(dir, u)));
        }
    }
    return s;
}

Term RingModel::prop(int node, Letter dir, const std::string& name) const {
    std::string base, idx;
    if (!split_indexed(name, base, idx)) throw RingError(RingError::Kind::UnsupportedShape, "unindexed atom " + name);
    const int k = std::stoi(idx) - 1;
    if (k < 0 || k >= n_) throw RingError(RingError::Kind::UnsupportedShape, "index out of range in " + name);
    const auto& t = nodes_[node];
    const int v = sched_of(dir);
    if (base == "sch") return t_bool(sched_ == Scheduler::Synchronous || k == v);
    if (base == "rcv") {
        const int p = (k + n_ - 1) % n_;
        if (sched_ == Scheduler::Interleaving && p != v) return t_bool(false);
        return tm_.out("snd", t_int(t[p]), 0);
    }
    const auto& ins = tm_.inputs();
    for (int i = 0; i < nloc_; ++i)
        if (ins[i] == base) return t_bool(local_of(dir, k) >> i & 1);
    for (auto& o : tm_.outputs())
        if (o == base) return tm_.out(base, t_int(t[k]), 0);
    throw RingError(RingError::Kind::UnsupportedShape, "unknown proposition " + name);
}

// ---------------------------------------------------------------------------
// constraints

namespace {

struct Prepared {
    std::vector<IndexedFormula> guarantees;  // localized
    Formula a_loc;                           // index-free, null when absent
};

Prepared prepare(const RingSpec& rs) {
    Prepared p;
    if (rs.assumption) p.a_loc = strip_index(*rs.assumption);
    for (auto& g : rs.guarantees)
        p.guarantees.push_back(rs.assumption && g.arity() == 1 ? localize(*rs.assumption, g) : g);
    return p;
}

std::vector<std::string> sorted_atoms(const Formula& f) {
    auto s = atoms_of(f);
    return {s.begin(), s.end()};
}

void emit_formula(SmtQuery& q, const SystemModel& sys, const Formula& body, const std::string& tag) {
    NbwOptions o;
    o.max_props = 64;
    o.complete = false;
    WordAutomaton u = ucw_for(body, sorted_atoms(body), o);
    WordEmitter w(u, false, scheme_for(u.acc, static_cast<long long>(u.num_states) * sys.num_nodes()), tag);
    w.declare(q, sys);
    w.emit(q, sys, [&](int x, Letter d, const std::string& p) { return sys.prop(x, d, p); }, true);
}

}  // namespace

SmtQuery modular_constraints(const RingSpec& rs, int size, const RingSynthOptions& opt) {
    const Prepared prep = prepare(rs);
    TemplateMachine tm(rs, size);
    SmtQuery q;
    tm.declare(q);
    const int nloc = static_cast<int>(rs.inputs.size());

    std::map<int, std::vector<Formula>> groups;  // ring size -> instantiated conjuncts
    std::vector<Formula> local;
    int top = 2;
    for (auto& g : prep.guarantees) top = std::max(top, cutoff_for(g));
    for (auto& g : prep.guarantees) {
        const int c = cutoff_for(g);
        if (opt.hub && g.arity() == 1) {
            local.push_back(strip_index(g));
            continue;
        }
        const int n = opt.modular ? c : top;
        for (auto& t : index_tuples(g, n, true)) groups[n].push_back(instantiate(g, t));
    }
    if (opt.hub) {
        Specification hub = hub_abstract(mk_and(local), prep.a_loc, rs, false);
        emit_formula(q, tm, hub.ltl_body(), "hub");
    } else {
        const int n = groups.empty() ? 2 : groups.begin()->first;
        groups[n].push_back(release(prep.a_loc, 1));
    }
    for (auto& [n, conj] : groups) {
        RingModel rm(tm, n, opt.scheduler, nloc);
        Formula body = to_pnf(mk_and(conj));
        if (has_until(body)) body = to_pnf(implies(fairness_formula(n, opt.scheduler), body));
        emit_formula(q, rm, body, "r" + std::to_string(n));
    }
    return q;
}

Machine extract_template(const Model& model, const RingSpec& rs, int size) {
    Specification s;
    s.inputs = rs.template_inputs();
    s.outputs = rs.template_outputs();
    Machine m = extract_machine(model, size, s);
    m.init = {0, 1};
    return m.canonical();
}

void check_template(const Machine& t) {
    using K = RingError::Kind;
    if (t.kind != Semantics::Moore) throw RingError(K::BadTemplate, "templates are Moore machines");
    if (t.init.size() != 2) throw RingError(K::BadTemplate, "a template has exactly two initial states");
    auto idx = [&](const std::vector<std::string>& v, const std::string& p) {
        auto it = std::find(v.begin(), v.end(), p);
        if (it == v.end()) throw RingError(K::BadTemplate, "template lacks '" + p + "'");
        return static_cast<int>(it - v.begin());
    };
    const int tok = idx(t.outputs, "tok"), snd = idx(t.outputs, "snd"), rcv = idx(t.inputs, "rcv");
    auto has = [&](int s, int bit) { return (t.out[s][0] >> bit & 1) != 0; };
    if (!has(t.init[0], tok) || has(t.init[1], tok))
        throw RingError(K::BadTemplate, "exactly one initial state must hold the token");
    for (int s = 0; s < t.num_states; ++s) {
        if (has(s, snd) && !has(s, tok)) throw RingError(K::BadTemplate, "state " + std::to_string(s) + " sends without token");
        for (Letter d = 0; d < t.dirs(); ++d) {
            const bool r = d >> rcv & 1;
            const bool nt = has(t.next[s][d], tok);
            bool ok = true;
            if (!has(s, tok))
                ok = nt == r;
            else if (!r)
                ok = nt == !has(s, snd);
            if (!ok) throw RingError(K::BadTemplate, "transition typing violated at state " + std::to_string(s));
        }
    }
}

// ---------------------------------------------------------------------------
// composition

Machine compose_ring(const Machine& tmpl, int n, Scheduler sched, const ComposeOptions& opt) {
    check_template(tmpl);
    if (n < 2) throw RingError(RingError::Kind::UnsupportedShape, "rings need at least two processes");
    if (n > opt.max_n) throw RingError(RingError::Kind::StateExplosion, "ring size above the configured cap");
    if (sched == Scheduler::FullyAsynchronous && n > 3)
        throw RingError(RingError::Kind::StateExplosion, "asynchronous rings are composed up to size 3");
    const int nloc = static_cast<int>(tmpl.inputs.size()) - 1;
    const int rcv_bit = nloc;
    const int tok = static_cast<int>(std::find(tmpl.outputs.begin(), tmpl.outputs.end(), "tok") - tmpl.outputs.begin());
    const int snd = static_cast<int>(std::find(tmpl.outputs.begin(), tmpl.outputs.end(), "snd") - tmpl.outputs.begin());
    (void)tok;
    const int nsch = sched == Scheduler::Synchronous ? 0 : n;

    Machine g;
    g.kind = Semantics::Moore;
    for (int i = 1; i <= nsch; ++i) g.inputs.push_back(ix("sch", i));
    for (int i = 1; i <= n; ++i)
        for (int k = 0; k < nloc; ++k) g.inputs.push_back(ix(tmpl.inputs[k], i));
    for (int i = 1; i <= n; ++i)
        for (auto& o : tmpl.outputs) g.outputs.push_back(ix(o, i));
    if (g.inputs.size() > 12)
        throw AutomatonError(AutomatonError::Kind::AlphabetTooLarge, "ring input alphabet exceeds the enumeration cap");

    auto sends = [&](int s) { return (tmpl.out[s][0] >> snd & 1) != 0; };
    auto local = [&](Letter d, int k) { return (d >> (nsch + k * nloc)) & ((Letter{1} << nloc) - 1); };
    auto step = [&](const std::vector<int>& s, Letter d) {
        std::vector<int> r = s;
        const Letter rcv = Letter{1} << rcv_bit;
        if (sched == Scheduler::Synchronous) {
            for (int u = 0; u < n; ++u)
                r[u] = tmpl.next[s[u]][local(d, u) | (sends(s[(u + n - 1) % n]) ? rcv : 0)];
            return r;
        }
        std::vector<char> m(n);
        int cnt = 0, v = -1;
        for (int u = 0; u < n; ++u)
            if (d >> u & 1) {
                m[u] = 1;
                ++cnt;
                v = u;
            }
        if (sched == Scheduler::Interleaving) {
            if (cnt != 1) return r;
            const int w = (v + 1) % n;
            r[v] = tmpl.next[s[v]][local(d, v)];
            if (sends(s[v])) r[w] = tmpl.next[s[w]][local(d, w) | rcv];
            return r;
        }
        std::vector<char> recv(n, 0), blocked(n, 0);
        for (int u = 0; u < n; ++u)
            if (m[u] && sends(s[u])) {
                const int w = (u + 1) % n;
                if (m[w])
                    recv[w] = 1;
                else
                    blocked[u] = 1;
            }
        for (int u = 0; u < n; ++u)
            if (m[u] && !blocked[u]) r[u] = tmpl.next[s[u]][local(d, u) | (recv[u] ? rcv : 0)];
        return r;
    };

    std::map<std::vector<int>, int> id;
    std::vector<std::vector<int>> states;
    std::deque<int> work;
    auto intern = [&](const std::vector<int>& s) {
        auto [it, fresh] = id.emplace(s, static_cast<int>(states.size()));
        if (fresh) {
            if (states.size() >= opt.max_states)
                throw RingError(RingError::Kind::StateExplosion, "global state count exceeds the cap");
            states.push_back(s);
            work.push_back(it->second);
        }
        return it->second;
    };
    g.init.clear();
    for (int p = 0; p < n; ++p) {
        std::vector<int> s(n, tmpl.init[1]);
        s[p] = tmpl.init[0];
        g.init.push_back(intern(s));
    }
    const Letter dirs = g.dirs();
    while (!work.empty()) {
        const int x = work.front();
        work.pop_front();
        if (static_cast<int>(g.next.size()) <= x) g.next.resize(x + 1);
        g.next[x].assign(dirs, 0);
        for (Letter d = 0; d < dirs; ++d) g.next[x][d] = intern(step(states[x], d));
    }
    g.num_states = static_cast<int>(states.size());
    g.next.resize(g.num_states);
    g.out.assign(g.num_states, {0});
    const int no = static_cast<int>(tmpl.outputs.size());
    for (int x = 0; x < g.num_states; ++x)
        for (int u = 0; u < n; ++u) g.out[x][0] |= tmpl.out[states[x][u]][0] << (u * no);
    return g;
}

std::vector<RingCheck> verify_ring(const Machine& tmpl, const RingSpec& rs, int n, Scheduler sched) {
    const Prepared prep = prepare(rs);
    Machine g = compose_ring(tmpl, n, sched);
    std::vector<RingCheck> out;

    RingCheck uniq{n, "exactly one token", true, ""};
    for (int x = 0; x < g.num_states && uniq.holds; ++x) {
        int c = 0;
        for (int u = 1; u <= n; ++u) {
            const auto k = std::find(g.outputs.begin(), g.outputs.end(), ix("tok", u)) - g.outputs.begin();
            c += g.out[x][0] >> k & 1;
        }
        if (c != 1) {
            uniq.holds = false;
            uniq.cex = "global state " + std::to_string(x) + " has " + std::to_string(c) + " tokens";
        }
    }
    out.push_back(uniq);

    const Formula fair = fairness_formula(n, sched);
    auto check = [&](const std::string& name, Formula body) {
        body = to_pnf(body);
        if (has_until(body)) body = to_pnf(implies(fair, body));
        McResult r = mc_ltl(g, body);
        out.push_back({n, name, r.holds, r.cex_text});
    };
    std::vector<Formula> rel;
    for (int i = 1; i <= n; ++i) rel.push_back(release(prep.a_loc, i));
    check("token release", mk_and(std::move(rel)));
    for (auto& f : prep.guarantees) {
        std::vector<Formula> inst;
        for (auto& t : index_tuples(f, n, false)) inst.push_back(instantiate(f, t));
        check(f.to_text(), mk_and(std::move(inst)));
    }
    return out;
}

RingSynthResult ring_synth(const RingSpec& rs, const RingSynthOptions& opt) {
    RingSynthResult res;
    const Prepared prep = prepare(rs);
    for (auto& g : prep.guarantees) res.cutoff = std::max(res.cutoff, cutoff_for(g));
    std::vector<int> vsizes = opt.verify_sizes;
    if (vsizes.empty()) vsizes = {res.cutoff, res.cutoff + 1};
    for (int size : opt.sizes) {
        SmtQuery q = modular_constraints(rs, size, opt);
        SolverVerdict v = solve(q, opt.solver);
        if (opt.log)
            opt.log("template size " + std::to_string(size) + ": " +
                    (v.kind == SolverVerdict::Kind::Sat     ? "sat"
                     : v.kind == SolverVerdict::Kind::Unsat ? "unsat"
                                                            : "unknown " + v.reason));
        if (v.kind == SolverVerdict::Kind::Unknown) {
            res.notes.push_back("solver stopped at template size " + std::to_string(size) + ": " + v.reason);
            return res;
        }
        if (v.kind != SolverVerdict::Kind::Sat) continue;
        Machine t = extract_template(v.model, rs, size);
        check_template(t);
        std::vector<RingCheck> checks;
        bool ok = true;
        for (int n : vsizes)
            for (auto& c : verify_ring(t, rs, n, opt.scheduler)) {
                ok = ok && c.holds;
                checks.push_back(c);
            }
        if (!ok) {
            res.notes.push_back("template of size " + std::to_string(size) + " failed ring verification");
            if (opt.log) opt.log(res.notes.back());
            continue;
        }
        res.found = true;
        res.tmpl = t;
        res.size = size;
        res.checks = std::move(checks);
        return res;
    }
    return res;
}

}  // namespace sk
