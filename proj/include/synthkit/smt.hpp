#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sk {

enum class Sort { Bool, Int };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    enum class K { BoolLit, IntLit, App, Not, And, Or, Implies, Eq, Lt, Le, Add, Sub, Ite };
    K k = K::BoolLit;
    long long val = 0;  // literal value (bools as 0/1)
    std::string fn;     // App
    std::vector<Term> args;
};

Term t_bool(bool b);
Term t_int(long long n);
Term t_app(const std::string& fn, std::vector<Term> args = {});
Term t_not(Term a);
Term t_and(std::vector<Term> ks);
Term t_or(std::vector<Term> ks);
Term t_and(Term a, Term b);
Term t_or(Term a, Term b);
Term t_implies(Term a, Term b);
Term t_eq(Term a, Term b);
Term t_lt(Term a, Term b);
Term t_le(Term a, Term b);
Term t_gt(Term a, Term b);
Term t_ge(Term a, Term b);
Term t_add(Term a, Term b);
Term t_sub(Term a, Term b);
Term t_ite(Term c, Term a, Term b);
bool is_lit(const Term& t, bool value);
std::string to_smtlib(const Term& t);

class SmtError : public std::runtime_error {
public:
    enum class Kind { SolverNotFound, SolverFailure, ParseError, Sort, Domain };
    SmtError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

struct Decl {
    std::string name;
    std::vector<Sort> args;
    Sort result = Sort::Bool;
};

struct SmtQuery {
    std::vector<Decl> decls;
    std::vector<Term> assertions;
    std::map<std::string, std::size_t> index;

    // throws on redeclaration
    void declare(const std::string& name, std::vector<Sort> args, Sort result);
    bool declared(const std::string& name) const { return index.count(name) > 0; }
    const Decl& decl(const std::string& name) const;
    // literal `true` is dropped; literal `false` is kept
    void add(Term t);
    // every symbol declared, every assertion Bool-sorted; throws SmtError(Sort)
    void check() const;
    std::string serialize() const;
};

// Parse the declarations of a serialized query (round-trip check).
std::vector<Decl> parse_declarations(const std::string& text);

// A function interpretation: explicit table plus a default.
struct FuncTable {
    std::vector<Sort> args;
    Sort result = Sort::Bool;
    std::map<std::vector<long long>, long long> table;
    long long dflt = 0;
    // bodies that do not fold into a point table are evaluated directly
    std::shared_ptr<std::function<long long(const std::vector<long long>&)>> fallback;
    long long at(const std::vector<long long>& a) const;
};

struct Model {
    std::map<std::string, FuncTable> funcs;
    long long eval(const std::string& fn, const std::vector<long long>& args = {}) const;
};

long long eval_term(const Term& t, const Model& m);

struct SolverVerdict {
    enum class Kind { Sat, Unsat, Unknown };
    Kind kind = Kind::Unknown;
    Model model;
    std::string reason;
};

struct SolverConfig {
    std::string path;     // empty: $SYNTHKIT_SOLVER, else "z3"
    double timeout_s = 0;  // 0: none
    const std::atomic<bool>* cancel = nullptr;
};

SolverVerdict solve(const SmtQuery& q, const SolverConfig& cfg = {});
// Parse raw solver output for the given query's declarations.
SolverVerdict parse_solver_output(const std::string& out, const SmtQuery& q);

struct BruteDomain {
    std::vector<std::pair<long long, long long>> args;  // Int argument ranges; Bool args use [0,1]
    std::pair<long long, long long> result{0, 1};
};

// Exhaustive search over all interpretations within the given domains.
SolverVerdict brute_solve(const SmtQuery& q, const std::map<std::string, BruteDomain>& domains,
                          long long max_candidates = 1000000);

}  // namespace sk
