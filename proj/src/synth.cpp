#include "synthkit/synth.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "synthkit/modelcheck.hpp"

namespace sk {

// ---------------------------------------------------------------------------
// system models

SymbolicMachine::SymbolicMachine(Semantics kind, std::vector<std::string> inputs, std::vector<std::string> outputs,
                                 int n, std::string prefix)
    : kind_(kind), inputs_(std::move(inputs)), outputs_(std::move(outputs)), n_(n), prefix_(std::move(prefix)) {
    if (n < 1) throw SynthError("machine size must be positive");
}

Term SymbolicMachine::tau(const Term& t, Letter dir) const {
    if (n_ == 1) return t_int(0);
    return t_app(tau_name(), {t, t_int(static_cast<long long>(dir))});
}

Term SymbolicMachine::out(const std::string& name, const Term& t, Letter dir) const {
    if (kind_ == Semantics::Moore) return t_app(out_name(name), {t});
    return t_app(out_name(name), {t, t_int(static_cast<long long>(dir))});
}

std::vector<Term> SymbolicMachine::succ(int node, Letter dir) const { return {tau(t_int(node), dir)}; }

Term SymbolicMachine::prop(int node, Letter dir, const std::string& name) const {
    for (std::size_t i = 0; i < inputs_.size(); ++i)
        if (inputs_[i] == name) return t_bool(dir >> i & 1);
    for (auto& o : outputs_)
        if (o == name) return out(name, t_int(node), dir);
    throw SynthError("unknown proposition '" + name + "' in encoding");
}

Term SymbolicMachine::out_is(int t, Letter o) const {
    std::vector<Term> ks;
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
        Term v = out(outputs_[i], t_int(t), 0);
        ks.push_back((o >> i & 1) ? v : t_not(v));
    }
    return t_and(std::move(ks));
}

void SymbolicMachine::declare(SmtQuery& q) const {
    if (n_ > 1) {
        q.declare(tau_name(), {Sort::Int, Sort::Int}, Sort::Int);
        for (int t = 0; t < n_; ++t)
            for (Letter d = 0; d < num_dirs(); ++d) {
                Term x = tau(t_int(t), d);
                q.add(t_ge(x, t_int(0)));
                q.add(t_lt(x, t_int(n_)));
            }
    }
    for (auto& o : outputs_) {
        if (kind_ == Semantics::Moore)
            q.declare(out_name(o), {Sort::Int}, Sort::Bool);
        else
            q.declare(out_name(o), {Sort::Int, Sort::Int}, Sort::Bool);
    }
}

Term FixedMachine::prop(int node, Letter dir, const std::string& name) const {
    for (std::size_t i = 0; i < m_.inputs.size(); ++i)
        if (m_.inputs[i] == name) return t_bool(dir >> i & 1);
    for (std::size_t i = 0; i < m_.outputs.size(); ++i)
        if (m_.outputs[i] == name) return t_bool(m_.output(node, dir) >> i & 1);
    throw SynthError("unknown proposition '" + name + "' in encoding");
}

// ---------------------------------------------------------------------------
// word automaton annotation

WordEmitter::WordEmitter(const WordAutomaton& a, bool existential, RankScheme scheme, std::string tag)
    : a_(a), existential_(existential), scheme_(std::move(scheme)), tag_(std::move(tag)) {
    fixed_.assign(a_.num_states, -1);
    const bool buchi = scheme_.acc.kind == AccKind::Buchi, cobuchi = scheme_.acc.kind == AccKind::CoBuchi;
    if (!buchi && !cobuchi) return;
    for (int q = 0; q < a_.num_states; ++q) {
        if (!a_.is_true_loop(q)) continue;
        const bool in_f = contains(scheme_.acc.set(), q);
        fixed_[q] = buchi ? in_f : !in_f;
    }
}

Term WordEmitter::rch(int state, const std::vector<Term>& args) const {
    if (fixed_[state] >= 0) return t_bool(fixed_[state] == 1);
    std::vector<Term> a{t_int(state)};
    a.insert(a.end(), args.begin(), args.end());
    return t_app("rch_" + tag_, std::move(a));
}

std::vector<Term> WordEmitter::ranks(int state, const std::vector<Term>& args) const {
    std::vector<Term> r;
    for (int c = 0; c < scheme_.components(); ++c) {
        std::vector<Term> a{t_int(state)};
        a.insert(a.end(), args.begin(), args.end());
        r.push_back(t_app("rk_" + tag_ + "_" + std::to_string(c), std::move(a)));
    }
    return r;
}

void WordEmitter::declare(SmtQuery& q, const SystemModel& sys) const {
    std::vector<Sort> sorts(1 + sys.node_args(0).size(), Sort::Int);
    q.declare("rch_" + tag_, sorts, Sort::Bool);
    for (int c = 0; c < scheme_.components(); ++c) q.declare("rk_" + tag_ + "_" + std::to_string(c), sorts, Sort::Int);
}

void WordEmitter::emit(SmtQuery& q, const SystemModel& sys, const PropEval& eval, bool assert_initial) const {
    auto src = a_.by_source();
    auto reach = a_.reachable();
    for (int s = 0; s < a_.num_states; ++s) {
        if (!reach[s] || fixed_[s] >= 0) continue;
        for (int x = 0; x < sys.num_nodes(); ++x) {
            const auto args = sys.node_args(x);
            const Term lhs = rch(s, args);
            const auto r = ranks(s, args);
            for (auto& dom : scheme_.domain(r)) q.add(dom);
            std::vector<Term> items;
            for (Letter d = 0; d < sys.num_dirs(); ++d) {
                for (int ti : src[s]) {
                    const Transition& tr = a_.trans[ti];
                    std::vector<Term> lits;
                    for (std::size_t k = 0; k < a_.props.size(); ++k) {
                        if (!(tr.guard.care >> k & 1)) continue;
                        Term v = eval(x, d, a_.props[k]);
                        lits.push_back((tr.guard.val >> k & 1) ? v : t_not(v));
                    }
                    Term g = t_and(std::move(lits));
                    if (is_lit(g, false)) continue;
                    Term tgt;
                    if (fixed_[tr.dst] >= 0) {
                        tgt = t_bool(fixed_[tr.dst] == 1);
                    } else {
                        const auto next = sys.succ(x, d);
                        tgt = t_and(rch(tr.dst, next), scheme_.cmp(s, r, ranks(tr.dst, next)));
                    }
                    items.push_back(existential_ ? t_and(g, tgt) : t_implies(g, tgt));
                }
            }
            q.add(t_implies(lhs, existential_ ? t_or(std::move(items)) : t_and(std::move(items))));
        }
    }
    if (assert_initial)
        for (int x : sys.initial_nodes()) q.add(rch(a_.initial, sys.node_args(x)));
}

// ---------------------------------------------------------------------------
// encodings

namespace {

void check_dirs(std::size_t ninputs, std::size_t cap) {
    if (ninputs > cap)
        throw AutomatonError(AutomatonError::Kind::AlphabetTooLarge,
                             std::to_string(ninputs) + " inputs exceed the enumeration cap of " + std::to_string(cap));
}

long long bound_for(const WordAutomaton& a, const SystemModel& sys) {
    return static_cast<long long>(a.num_states) * sys.num_nodes();
}

SmtQuery encode_word(const WordAutomaton& a, const RankScheme& scheme, const SystemModel& sys, bool existential) {
    const bool nondet = a.mode == AutMode::Nondeterministic;
    if (nondet != existential)
        throw AutomatonError(AutomatonError::Kind::ModeMismatch,
                             existential ? "existential encoding needs a nondeterministic automaton"
                                         : "universal encoding needs a universal automaton");
    SmtQuery q;
    sys.declare(q);
    WordEmitter w(a, existential, scheme, "w");
    w.declare(q, sys);
    w.emit(q, sys, [&](int x, Letter d, const std::string& p) { return sys.prop(x, d, p); }, true);
    return q;
}

std::vector<std::string> io_props(const Specification& spec) {
    std::vector<std::string> p = spec.inputs;
    p.insert(p.end(), spec.outputs.begin(), spec.outputs.end());
    return p;
}

}  // namespace

SmtQuery encode_word_E(const WordAutomaton& a, const RankScheme& scheme, const SystemModel& sys) {
    return encode_word(a, scheme, sys, true);
}

SmtQuery encode_word_A(const WordAutomaton& a, const RankScheme& scheme, const SystemModel& sys) {
    return encode_word(a, scheme, sys, false);
}

SmtQuery encode_ltl(const WordAutomaton& ucw, int n, const Specification& spec) {
    if (ucw.mode != AutMode::Universal || ucw.acc.kind != AccKind::CoBuchi)
        throw AutomatonError(AutomatonError::Kind::ModeMismatch, "encode_ltl needs a universal co-Buchi automaton");
    check_dirs(spec.inputs.size(), 12);
    SymbolicMachine sys(spec.semantics, spec.inputs, spec.outputs, n);
    return encode_word_A(ucw, scheme_for(ucw.acc, bound_for(ucw, sys)), sys);
}

SmtQuery encode_ctl_direct(const SubformulaTable& table, int n, const Specification& spec, const NbwOptions& opt) {
    if (spec.semantics != Semantics::Moore) throw SynthError("CTL* encodings require Moore semantics");
    check_dirs(spec.inputs.size(), opt.max_props);
    SymbolicMachine sys(Semantics::Moore, spec.inputs, spec.outputs, n);
    SmtQuery q;
    sys.declare(q);
    std::vector<std::unique_ptr<WordEmitter>> ems;
    std::map<std::string, int> pidx;
    for (std::size_t j = 0; j < table.entries.size(); ++j) {
        const auto& e = table.entries[j];
        std::vector<std::string> props = io_props(spec);
        NbwOptions o = opt;
        o.max_props = 64;
        o.complete = false;
        for (auto& a : atoms_of(e.body))
            if (pidx.count(a)) {
                props.push_back(a);
                o.monotone.insert(a);
            }
        WordAutomaton aut;
        if (e.existential) {
            aut = ltl_to_nbw(e.body, props, o);
        } else {
            aut = ltl_to_nbw(negate(e.body), props, o);
            aut.mode = AutMode::Universal;
            aut.acc = Acceptance::cobuchi(aut.acc.set());
        }
        const long long bound = static_cast<long long>(aut.num_states) * n;
        ems.push_back(std::make_unique<WordEmitter>(aut, e.existential, scheme_for(aut.acc, bound),
                                                    "e" + std::to_string(j + 1)));
        ems.back()->declare(q, sys);
        ems.back()->emit(
            q, sys,
            [&](int x, Letter d, const std::string& p) {
                auto it = pidx.find(p);
                if (it == pidx.end()) return sys.prop(x, d, p);
                const WordEmitter& w = *ems[it->second];
                return w.rch(w.automaton().initial, sys.node_args(x));
            },
            false);
        pidx[e.prop] = static_cast<int>(j);
    }
    std::function<Term(const Formula&)> top = [&](const Formula& f) -> Term {
        switch (f->op) {
            case Op::True: return t_bool(true);
            case Op::False: return t_bool(false);
            case Op::Atom: {
                Term v;
                if (auto it = pidx.find(f->name); it != pidx.end()) {
                    const WordEmitter& w = *ems[it->second];
                    v = w.rch(w.automaton().initial, {t_int(0)});
                } else {
                    v = sys.prop(0, 0, f->name);
                }
                return f->neg ? t_not(v) : v;
            }
            case Op::And:
            case Op::Or: {
                std::vector<Term> ks;
                for (auto& k : f->kids) ks.push_back(top(k));
                return f->op == Op::And ? t_and(std::move(ks)) : t_or(std::move(ks));
            }
            default: throw SynthError("top-level formula is not Boolean");
        }
    };
    q.add(top(table.top));
    return q;
}

SmtQuery encode_ctl_aht(const HesitantTreeAutomaton& aht, int n, const Specification& spec) {
    if (spec.semantics != Semantics::Moore) throw SynthError("CTL* encodings require Moore semantics");
    if (aht.inputs != spec.inputs || aht.outputs != spec.outputs)
        throw SynthError("automaton and specification propositions differ");
    SymbolicMachine sys(Semantics::Moore, spec.inputs, spec.outputs, n);
    SmtQuery q;
    sys.declare(q);
    q.declare("rch_h", {Sort::Int, Sort::Int}, Sort::Bool);
    q.declare("rk_h", {Sort::Int, Sort::Int}, Sort::Int);
    auto rch = [](int s, const Term& t) { return t_app("rch_h", {t_int(s), t}); };
    auto rk = [](int s, const Term& t) { return t_app("rk_h", {t_int(s), t}); };
    const Letter outs = Letter{1} << spec.outputs.size();
    for (int s = 0; s < aht.num_states; ++s) {
        const int part = aht.part_of[s];
        const bool nset = aht.partitions[part].kind == PartKind::N;
        for (int t = 0; t < n; ++t) {
            const Term r = rk(s, t_int(t));
            q.add(t_ge(r, t_int(0)));
            for (Letter o = 0; o < outs; ++o) {
                std::function<Term(const PB&)> tr = [&](const PB& f) -> Term {
                    switch (f->kind) {
                        case PBool::Kind::True: return t_bool(true);
                        case PBool::Kind::False: return t_bool(false);
                        case PBool::Kind::Atom: {
                            const Term nx = sys.tau(t_int(t), f->dir);
                            Term cmp = t_bool(true);
                            if (aht.part_of[f->state] == part) {
                                const Term r2 = rk(f->state, nx);
                                if (nset)
                                    cmp = aht.acc[s] ? t_bool(true) : t_gt(r, r2);
                                else
                                    cmp = aht.acc[s] ? t_gt(r, r2) : t_ge(r, r2);
                            }
                            return t_and(rch(f->state, nx), cmp);
                        }
                        default: {
                            std::vector<Term> ks;
                            for (auto& k : f->kids) ks.push_back(tr(k));
                            return f->kind == PBool::Kind::And ? t_and(std::move(ks)) : t_or(std::move(ks));
                        }
                    }
                };
                Term body = tr(aht.delta[s][o]);
                if (is_lit(body, true)) continue;
                q.add(t_implies(t_and(rch(s, t_int(t)), sys.out_is(t, o)), body));
            }
        }
    }
    q.add(rch(aht.initial, t_int(0)));
    return q;
}

Machine extract_machine(const Model& model, int n, const Specification& spec, const std::string& prefix) {
    SymbolicMachine sys(spec.semantics, spec.inputs, spec.outputs, n, prefix);
    Machine m = Machine::blank(spec.semantics, spec.inputs, spec.outputs, n);
    for (int t = 0; t < n; ++t)
        for (Letter d = 0; d < m.dirs(); ++d) {
            long long s = n == 1 ? 0 : model.eval(sys.tau_name(), {t, static_cast<long long>(d)});
            m.next[t][d] = (s >= 0 && s < n) ? static_cast<int>(s) : 0;
        }
    for (int t = 0; t < n; ++t)
        for (std::size_t k = 0; k < m.out[t].size(); ++k) {
            Letter o = 0;
            for (std::size_t i = 0; i < spec.outputs.size(); ++i) {
                std::vector<long long> args{t};
                if (spec.semantics == Semantics::Mealy) args.push_back(static_cast<long long>(k));
                if (model.eval(sys.out_name(spec.outputs[i]), args)) o |= Letter{1} << i;
            }
            m.out[t][k] = o;
        }
    return m;
}

// ---------------------------------------------------------------------------
// loop

Specification dual_spec(const Specification& spec) {
    if (!spec.is_ltl()) throw SynthError("the dual specification is defined for LTL only");
    Specification d;
    d.inputs = spec.outputs;
    d.outputs = spec.inputs;
    d.semantics = spec.semantics == Semantics::Moore ? Semantics::Mealy : Semantics::Moore;
    d.formula = path_a(negate(spec.ltl_body()));
    return d;
}

SmtQuery build_query(const Specification& spec, Encoding enc, int n, const NbwOptions& opt) {
    switch (enc) {
        case Encoding::Ltl: {
            if (!spec.is_ltl()) throw SynthError("LTL encoding needs a quantifier-free specification");
            check_dirs(spec.inputs.size(), opt.max_props);
            NbwOptions o = opt;
            o.max_props = 64;
            o.complete = false;
            return encode_ltl(ucw_for(spec.ltl_body(), io_props(spec), o), n, spec);
        }
        case Encoding::CtlDirect: {
            std::set<std::string> taken(spec.inputs.begin(), spec.inputs.end());
            taken.insert(spec.outputs.begin(), spec.outputs.end());
            return encode_ctl_direct(decompose(spec.formula, taken), n, spec, opt);
        }
        case Encoding::CtlAht:
            return encode_ctl_aht(ctlstar_to_aht(spec.formula, spec.inputs, spec.outputs, opt), n, spec);
    }
    throw SynthError("unknown encoding");
}

bool verify(const Machine& m, const Specification& spec) {
    if (spec.is_ltl()) return mc_ltl(m, spec.ltl_body()).holds;
    return mc_ctl(m, spec.formula).holds;
}

// Redirect transitions to the lowest-numbered state that keeps the
// specification satisfied. Solver models are arbitrary among the correct
// machines; this picks a reproducible one.
Machine prefer_low_successors(Machine m, const Specification& spec) {
    for (int t = 0; t < m.num_states; ++t)
        for (Letter d = 0; d < m.dirs(); ++d)
            for (int s = 0; s < m.next[t][d]; ++s) {
                const int old = m.next[t][d];
                m.next[t][d] = s;
                if (verify(m, spec)) break;
                m.next[t][d] = old;
            }
    return m.canonical();
}

std::optional<Machine> synth_at(const Specification& spec, Encoding enc, int n, const SolverConfig& cfg,
                                const NbwOptions& opt, SolverVerdict* verdict) {
    SmtQuery q = build_query(spec, enc, n, opt);
    SolverVerdict v = solve(q, cfg);
    if (verdict) *verdict = v;
    if (v.kind != SolverVerdict::Kind::Sat) return std::nullopt;
    Machine m = extract_machine(v.model, n, spec).canonical();
    if (!verify(m, spec))
        throw SynthError("machine extracted at size " + std::to_string(n) + " fails the model-checking gate");
    if (!spec.is_ltl()) m = prefer_low_successors(m, spec);
    return m;
}

namespace {

struct SideOutcome {
    bool found = false;
    Machine machine;
    int size = 0;
    std::string note;
};

SideOutcome run_side(const Specification& spec, Encoding enc, const std::vector<int>& sizes, const SynthProblem& p,
                     const std::atomic<bool>* cancel, const std::string& name) {
    SideOutcome out;
    SolverConfig cfg = p.solver;
    cfg.cancel = cancel;
    for (int n : sizes) {
        if (cancel && cancel->load()) {
            out.note = "cancelled";
            return out;
        }
        SolverVerdict v;
        auto m = synth_at(spec, enc, n, cfg, p.nbw, &v);
        if (p.log) {
            const char* s = v.kind == SolverVerdict::Kind::Sat     ? "sat"
                            : v.kind == SolverVerdict::Kind::Unsat ? "unsat"
                                                                   : "unknown";
            p.log(name + " size " + std::to_string(n) + ": " + s + (v.reason.empty() ? "" : " (" + v.reason + ")"));
        }
        if (m) {
            out.found = true;
            out.machine = *m;
            out.size = n;
            return out;
        }
        if (v.kind == SolverVerdict::Kind::Unknown) {
            out.note = name + " stopped at size " + std::to_string(n) + ": " + v.reason;
            return out;
        }
    }
    out.note = name + " exhausted sizes up to " + (sizes.empty() ? std::string("0") : std::to_string(sizes.back()));
    return out;
}

}  // namespace

SynthResult synth_loop(const SynthProblem& p) {
    if (p.sizes.empty()) throw SynthError("empty size schedule");
    SynthResult res;
    if (!p.dual_race) {
        SideOutcome o = run_side(p.spec, p.encoding, p.sizes, p, nullptr, "system");
        if (o.found) {
            res.status = SynthResult::Status::Realizable;
            res.machine = o.machine;
            res.size = o.size;
        }
        res.note = o.note;
        return res;
    }
    if (p.encoding != Encoding::Ltl) throw SynthError("the dual race is only available for the LTL encoding");
    const Specification dual = dual_spec(p.spec);
    const std::vector<int>& dsizes = p.dual_sizes.empty() ? p.sizes : p.dual_sizes;

    std::atomic<bool> cancel{false};
    std::mutex mu;
    SideOutcome outcomes[2];
    std::exception_ptr errors[2];
    int winner = -1;
    auto side = [&](int which) {
        try {
            SideOutcome o = which == 0 ? run_side(p.spec, Encoding::Ltl, p.sizes, p, &cancel, "system")
                                       : run_side(dual, Encoding::Ltl, dsizes, p, &cancel, "dual");
            std::lock_guard<std::mutex> lk(mu);
            if (o.found && winner < 0) {
                winner = which;
                cancel = true;
            }
            outcomes[which] = std::move(o);
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            errors[which] = std::current_exception();
            cancel = true;
        }
    };
    std::thread t0(side, 0), t1(side, 1);
    t0.join();
    t1.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    if (winner == 0) {
        res.status = SynthResult::Status::Realizable;
        res.machine = outcomes[0].machine;
        res.size = outcomes[0].size;
    } else if (winner == 1) {
        res.status = SynthResult::Status::Unrealizable;
        res.machine = outcomes[1].machine;
        res.size = outcomes[1].size;
    } else {
        res.note = outcomes[0].note + "; " + outcomes[1].note;
    }
    return res;
}

}  // namespace sk
