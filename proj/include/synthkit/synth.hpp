#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "synthkit/aht.hpp"
#include "synthkit/automaton.hpp"
#include "synthkit/formula.hpp"
#include "synthkit/machine.hpp"
#include "synthkit/ranking.hpp"
#include "synthkit/smt.hpp"
#include "synthkit/spec.hpp"

namespace sk {

// The system side of an encoding: a finite set of concrete nodes whose
// successors and propositions are SMT terms over the unknown system.
class SystemModel {
public:
    virtual ~SystemModel() = default;
    virtual int num_nodes() const = 0;
    virtual std::vector<Term> node_args(int node) const = 0;
    virtual std::vector<int> initial_nodes() const = 0;
    virtual Letter num_dirs() const = 0;
    virtual std::vector<Term> succ(int node, Letter dir) const = 0;
    // value of an input/output proposition on the letter read at `node` with `dir`
    virtual Term prop(int node, Letter dir, const std::string& name) const = 0;
    virtual void declare(SmtQuery& q) const = 0;
};

// n-state Moore/Mealy machine with uninterpreted tau and outputs
class SymbolicMachine : public SystemModel {
public:
    SymbolicMachine(Semantics kind, std::vector<std::string> inputs, std::vector<std::string> outputs, int n,
                    std::string prefix = "");
    int num_nodes() const override { return n_; }
    std::vector<Term> node_args(int node) const override { return {t_int(node)}; }
    std::vector<int> initial_nodes() const override { return {0}; }
    Letter num_dirs() const override { return Letter{1} << inputs_.size(); }
    std::vector<Term> succ(int node, Letter dir) const override;
    Term prop(int node, Letter dir, const std::string& name) const override;
    void declare(SmtQuery& q) const override;

    Term tau(const Term& t, Letter dir) const;
    Term out(const std::string& name, const Term& t, Letter dir) const;
    // conjunction fixing all outputs of state t to letter o (Moore)
    Term out_is(int t, Letter o) const;
    std::string tau_name() const { return prefix_ + "tau"; }
    std::string out_name(const std::string& o) const { return prefix_ + "o_" + o; }
    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::vector<std::string>& outputs() const { return outputs_; }
    Semantics kind() const { return kind_; }
    int size() const { return n_; }

private:
    Semantics kind_;
    std::vector<std::string> inputs_, outputs_;
    int n_;
    std::string prefix_;
};

// a known machine; every proposition is a literal
class FixedMachine : public SystemModel {
public:
    explicit FixedMachine(Machine m) : m_(std::move(m)) {}
    int num_nodes() const override { return m_.num_states; }
    std::vector<Term> node_args(int node) const override { return {t_int(node)}; }
    std::vector<int> initial_nodes() const override { return m_.init; }
    Letter num_dirs() const override { return m_.dirs(); }
    std::vector<Term> succ(int node, Letter dir) const override { return {t_int(m_.next[node][dir])}; }
    Term prop(int node, Letter dir, const std::string& name) const override;
    void declare(SmtQuery&) const override {}

private:
    Machine m_;
};

using PropEval = std::function<Term(int node, Letter dir, const std::string& prop)>;

// Run annotation of one word automaton over a system model.
// existential: rch(q,x) -> OR over transitions; universal: AND.
class WordEmitter {
public:
    WordEmitter(const WordAutomaton& a, bool existential, RankScheme scheme, std::string tag);
    void declare(SmtQuery& q, const SystemModel& sys) const;
    void emit(SmtQuery& q, const SystemModel& sys, const PropEval& eval, bool assert_initial) const;
    // rch(q, args), constant for trivially accepting/rejecting loop states
    Term rch(int state, const std::vector<Term>& args) const;
    const WordAutomaton& automaton() const { return a_; }

private:
    std::vector<Term> ranks(int state, const std::vector<Term>& args) const;
    WordAutomaton a_;
    bool existential_;
    RankScheme scheme_;
    std::string tag_;
    std::vector<int> fixed_;  // -1 free, 0 false, 1 true
};

SmtQuery encode_ltl(const WordAutomaton& ucw, int n, const Specification& spec);
SmtQuery encode_word_E(const WordAutomaton& a, const RankScheme& scheme, const SystemModel& sys);
SmtQuery encode_word_A(const WordAutomaton& a, const RankScheme& scheme, const SystemModel& sys);
SmtQuery encode_ctl_direct(const SubformulaTable& table, int n, const Specification& spec,
                           const NbwOptions& opt = {});
SmtQuery encode_ctl_aht(const HesitantTreeAutomaton& aht, int n, const Specification& spec);

// read tau/out tables; absent entries default to state 0 / empty output
Machine extract_machine(const Model& model, int n, const Specification& spec, const std::string& prefix = "");

enum class Encoding { Ltl, CtlDirect, CtlAht };

struct SynthProblem {
    Specification spec;
    Encoding encoding = Encoding::Ltl;
    std::vector<int> sizes{1, 2, 3, 4};
    bool dual_race = false;
    std::vector<int> dual_sizes;  // empty: same as sizes
    SolverConfig solver;
    NbwOptions nbw;
    std::function<void(const std::string&)> log;
};

struct SynthResult {
    enum class Status { Realizable, Unrealizable, BoundExhausted };
    Status status = Status::BoundExhausted;
    Machine machine;  // system, or the dual (environment) witness
    int size = 0;
    std::string note;
};

class SynthError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// inputs and outputs swapped, body negated, Moore <-> Mealy
Specification dual_spec(const Specification& spec);
// build the query for one size
SmtQuery build_query(const Specification& spec, Encoding enc, int n, const NbwOptions& opt = {});
// solve one size; a returned machine has passed the model-checking gate
std::optional<Machine> synth_at(const Specification& spec, Encoding enc, int n, const SolverConfig& cfg,
                                const NbwOptions& opt = {}, SolverVerdict* verdict = nullptr);
// the independent check used as the gate
bool verify(const Machine& m, const Specification& spec);
SynthResult synth_loop(const SynthProblem& p);

}  // namespace sk
