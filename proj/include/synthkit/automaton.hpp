#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "synthkit/formula.hpp"

namespace sk {

using Letter = std::uint64_t;  // bit i = value of props[i]

// Partial assignment; unmentioned propositions are don't-care.
struct Cube {
    std::uint64_t care = 0;
    std::uint64_t val = 0;

    bool matches(Letter l) const { return (l & care) == val; }
    bool is_true() const { return care == 0; }
    // conjunction; returns false on a clash
    bool conj(const Cube& o, Cube& out) const;
    bool implies(const Cube& o) const { return (o.care & ~care) == 0 && (val & o.care) == o.val; }
    bool operator==(const Cube& o) const { return care == o.care && val == o.val; }
    bool operator<(const Cube& o) const { return care != o.care ? care < o.care : val < o.val; }
    std::string to_string(const std::vector<std::string>& props) const;
};

// Cubes covering exactly the letters not covered by `cs`.
std::vector<Cube> complement(const std::vector<Cube>& cs);
bool is_tautology(const std::vector<Cube>& cs);

enum class AccKind { Buchi, CoBuchi, Streett, Rabin, Parity, GenBuchi, GenCoBuchi };

struct Acceptance {
    AccKind kind = AccKind::Buchi;
    std::vector<std::vector<int>> sets;                                 // Buchi/CoBuchi: one set; generalized: m sets
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;  // Streett (A_i, G_i); Rabin (F_i, I_i)
    std::vector<int> priority;                                          // parity, min-even

    static Acceptance buchi(std::vector<int> f);
    static Acceptance cobuchi(std::vector<int> f);
    static Acceptance streett(std::vector<std::pair<std::vector<int>, std::vector<int>>> p);
    static Acceptance rabin(std::vector<std::pair<std::vector<int>, std::vector<int>>> p);
    static Acceptance parity(std::vector<int> prio);
    static Acceptance gen_buchi(std::vector<std::vector<int>> fs);
    static Acceptance gen_cobuchi(std::vector<std::vector<int>> fs);

    // does a run whose set of infinitely visited states is `inf` satisfy the condition
    bool satisfied_by(const std::vector<char>& inf) const;
    const std::vector<int>& set() const { return sets.at(0); }
};

bool contains(const std::vector<int>& set, int q);

enum class AutMode { Nondeterministic, Universal };

struct Transition {
    int src;
    Cube guard;
    int dst;
};

struct WordAutomaton {
    std::vector<std::string> props;
    int num_states = 0;
    int initial = 0;
    AutMode mode = AutMode::Nondeterministic;
    std::vector<Transition> trans;
    Acceptance acc;

    int prop_index(const std::string& p) const;  // -1 when absent
    std::vector<std::vector<int>> by_source() const;
    std::vector<int> successors(int q, Letter l) const;
    bool is_complete() const;
    // add a non-accepting sink for missing letters; returns the sink id or -1
    int complete();
    // states reachable from the initial state
    std::vector<char> reachable() const;
    // a state whose only transition is an unconditional self-loop
    bool is_true_loop(int q) const;

    std::string to_text() const;
    static WordAutomaton from_text(const std::string& text);
};

class AutomatonError : public std::runtime_error {
public:
    enum class Kind { AlphabetTooLarge, UnknownProposition, Malformed, ModeMismatch };
    AutomatonError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

struct NbwOptions {
    std::size_t max_props = 12;
    // propositions that must not get a negative literal introduced by the
    // until/release refinement (keeps guards monotone in them)
    std::set<std::string> monotone;
    bool complete = true;
};

// Nondeterministic Buchi automaton for a quantifier-free PNF path formula.
WordAutomaton ltl_to_nbw(const Formula& phi, const std::vector<std::string>& props, const NbwOptions& opt = {});
// Universal co-Buchi automaton: the NBW of the negation, read universally.
WordAutomaton ucw_for(const Formula& phi, const std::vector<std::string>& props, const NbwOptions& opt = {});

// number of states that are not the completion sink
int count_nonsink_states(const WordAutomaton& a);

}  // namespace sk
