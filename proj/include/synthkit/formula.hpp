#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sk {

enum class Op { True, False, Atom, Not, And, Or, Next, Until, Release, PathA, PathE };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::string name;  // atoms only
    bool neg = false;  // atom polarity
    std::vector<Formula> kids;
};

Formula mk_true();
Formula mk_false();
Formula atom(const std::string& name, bool neg = false);
Formula mk_not(Formula f);
// n-ary; nested conjunctions are flattened, constants absorbed
Formula mk_and(std::vector<Formula> kids);
Formula mk_or(std::vector<Formula> kids);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula next(Formula f);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula path_a(Formula f);
Formula path_e(Formula f);

// derived operators, stored desugared
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula globally(Formula f);             // false R f
Formula eventually(Formula f);           // true U f
Formula weak_until(Formula a, Formula b);  // b R (a | b)

bool is_true(const Formula& f);
bool is_false(const Formula& f);

// Text in the specification grammar; parse(to_string(f)) == f.
std::string to_string(const Formula& f);
bool equal(const Formula& a, const Formula& b);
std::size_t node_count(const Formula& f);

// Release positive normal form: negation only on atoms.
Formula to_pnf(const Formula& f);
bool is_pnf(const Formula& f);
// PNF of the negation of f
Formula negate(const Formula& f);

bool has_path_quantifier(const Formula& f);
bool is_propositional(const Formula& f);
bool has_until(const Formula& f);
std::set<std::string> atoms_of(const Formula& f);
Formula substitute(const Formula& f, const std::map<std::string, Formula>& sub);
// nesting depth of temporal + boolean operators
int depth(const Formula& f);

// Bottom-up table of quantified subformulas.
struct SubformulaEntry {
    std::string prop;  // p_i
    bool existential;  // E (true) or A (false)
    Formula body;      // quantifier-free path formula over O, I and earlier p_j
    int height;        // path-quantifier nesting height (1 = innermost)
};

struct SubformulaTable {
    std::vector<SubformulaEntry> entries;
    Formula top;  // boolean formula over O and p_i

    // f_i = Q body
    Formula quantified(std::size_t i) const;
    // substitute every p_i back
    Formula reconstruct() const;
};

// reserved: names used for the p_i propositions must avoid these
SubformulaTable decompose(const Formula& f, const std::set<std::string>& taken = {});

}  // namespace sk
