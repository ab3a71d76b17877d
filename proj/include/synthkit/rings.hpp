#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "synthkit/formula.hpp"
#include "synthkit/machine.hpp"
#include "synthkit/smt.hpp"
#include "synthkit/synth.hpp"

namespace sk {

class RingError : public std::runtime_error {
public:
    enum class Kind { Syntax, UnsupportedShape, StateExplosion, BadTemplate, GateFailed };
    RingError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

enum class Scheduler { Synchronous, Interleaving, FullyAsynchronous };
const char* to_string(Scheduler s);

struct IndexVar {
    enum class Cond { None, Neq, Succ };
    std::string name;
    Cond cond = Cond::None;
    std::string ref;  // earlier variable the condition refers to
};

// forall-prefix plus a body over indexed atoms base_var
struct IndexedFormula {
    std::vector<IndexVar> prefix;
    Formula body;

    int arity() const { return static_cast<int>(prefix.size()); }
    std::string to_text() const;
};

IndexedFormula parse_indexed(const std::string& text);
// 2, 3, 4 or 5; throws UnsupportedShape
int cutoff_for(const IndexedFormula& f);

// base name and index variable of an indexed atom "g_i"
bool split_indexed(const std::string& atom, std::string& base, std::string& var);

struct RingSpec {
    std::vector<std::string> inputs;   // local process inputs (rcv is implicit)
    std::vector<std::string> outputs;  // process outputs (tok and snd are implicit)
    std::vector<IndexedFormula> guarantees;
    std::optional<IndexedFormula> assumption;  // 1-indexed A_i, localized into every 1-indexed guarantee

    // template propositions: inputs + rcv, outputs + tok + snd
    std::vector<std::string> template_inputs() const;
    std::vector<std::string> template_outputs() const;
};

RingSpec parse_ring_spec(const std::string& text);

// index tuples satisfying the prefix in a ring of size n (1-based)
std::vector<std::vector<int>> index_tuples(const IndexedFormula& f, int n, bool representatives);
// body with every var replaced by its index
Formula instantiate(const IndexedFormula& f, const std::vector<int>& idx);
// the same body with the index suffix dropped (1-indexed only)
Formula strip_index(const IndexedFormula& f);

struct RingFormulaOptions {
    Scheduler scheduler = Scheduler::Interleaving;
    bool fairness = true;
    bool representatives = true;
    Formula a_loc;  // null: true
};

// Full ring formula at size n: fairness and wiring assumptions imply the
// instantiated body, the token discipline and token release.
Formula ring_formula(const IndexedFormula& f, int n, const RingFormulaOptions& opt = {});
// (A_S -> G_S) & (A_L & A_S -> G_L); sound, not complete
Formula strengthen(const Formula& al, const Formula& as, const Formula& gl, const Formula& gs);
// forall i . (A_i & GF tok_i) -> G_i
IndexedFormula localize(const IndexedFormula& a, const IndexedFormula& g);
// full localized display including the token discipline, instantiated at index 1
Formula localized_formula(const IndexedFormula& a, const IndexedFormula& g);
// single-process spec with the hub assumptions over the index-free local
// guarantee; GF sch dropped. Without `discipline` the token conjuncts are left
// to the structural template constraints.
Specification hub_abstract(const Formula& local, const Formula& a_loc, const RingSpec& rs, bool discipline = true);

// n-process ring over a symbolic template (interleaving or synchronous)
class RingModel : public SystemModel {
public:
    RingModel(const SymbolicMachine& tmpl, int n, Scheduler sched, int local_inputs);
    int num_nodes() const override { return static_cast<int>(nodes_.size()); }
    std::vector<Term> node_args(int node) const override;
    std::vector<int> initial_nodes() const override;
    Letter num_dirs() const override;
    std::vector<Term> succ(int node, Letter dir) const override;
    Term prop(int node, Letter dir, const std::string& name) const override;
    void declare(SmtQuery&) const override {}

private:
    int sched_of(Letter dir) const;
    Letter local_of(Letter dir, int proc) const;
    const SymbolicMachine& tm_;
    int n_;
    Scheduler sched_;
    int nloc_;
    std::vector<std::vector<int>> nodes_;
};

// symbolic template: two initial states (0 has the token, 1 does not) and the
// token discipline asserted on tau and the outputs
class TemplateMachine : public SymbolicMachine {
public:
    TemplateMachine(const RingSpec& rs, int n);
    std::vector<int> initial_nodes() const override { return {0, 1}; }
    void declare(SmtQuery& q) const override;
};

struct RingSynthOptions {
    std::vector<int> sizes{2, 3, 4};  // template sizes
    bool hub = true;                   // 1-indexed guarantees via the hub abstraction
    bool modular = true;               // each guarantee at its own cutoff
    std::vector<int> verify_sizes;     // empty: max cutoff .. max cutoff + 1
    Scheduler scheduler = Scheduler::Interleaving;
    SolverConfig solver;
    std::function<void(const std::string&)> log;
};

struct RingCheck {
    int n = 0;
    std::string property;
    bool holds = false;
    std::string cex;
};

struct RingSynthResult {
    bool found = false;
    Machine tmpl;
    int size = 0;
    int cutoff = 0;
    std::vector<RingCheck> checks;
    std::vector<std::string> notes;
};

SmtQuery modular_constraints(const RingSpec& rs, int size, const RingSynthOptions& opt);
Machine extract_template(const Model& model, const RingSpec& rs, int size);
void check_template(const Machine& t);

struct ComposeOptions {
    std::size_t max_states = 1000000;
    int max_n = 5;
};

Machine compose_ring(const Machine& tmpl, int n, Scheduler sched, const ComposeOptions& opt = {});
// GF of each process being the one scheduled (interleaving) or scheduled at all
Formula fairness_formula(int n, Scheduler sched);
// every guarantee over all index tuples at size n, fairness assumed for non-safety bodies
std::vector<RingCheck> verify_ring(const Machine& tmpl, const RingSpec& rs, int n, Scheduler sched);

RingSynthResult ring_synth(const RingSpec& rs, const RingSynthOptions& opt = {});

}  // namespace sk
