#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sk {

enum class GuardKind { Disjunctive, Conjunctive };
enum class GuardTarget { Property, Deadlock };
enum class Fairness { None, Unconditional, Strong };

struct GuardedQuery {
    GuardKind kind = GuardKind::Disjunctive;
    int b = 1;                 // |B|
    std::optional<int> k;      // indexed B processes in the property; absent for deadlock
    GuardTarget target = GuardTarget::Property;
    Fairness fairness = Fairness::None;
    bool one_conjunctive = false;
    bool initializing_runs = false;
};

struct GuardedCutoff {
    int cutoff = 0;
    std::vector<std::string> notes;
};

class GuardedError : public std::runtime_error {
public:
    enum class Kind { RestrictionViolated, Unsupported, BadArgument };
    GuardedError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

GuardedCutoff guarded_cutoff(const GuardedQuery& q);

const char* to_string(GuardKind k);
const char* to_string(GuardTarget t);
const char* to_string(Fairness f);

}  // namespace sk
