#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synthkit/formula.hpp"
#include "synthkit/machine.hpp"
#include "synthkit/spec.hpp"
#include "synthkit/synth.hpp"

namespace sk {

struct WitnessLayout {
    int k = 0;
    int width = 0;                                        // bits per witness-ID variable
    std::map<std::string, std::vector<std::string>> v;    // E proposition -> ID bits, LSB first
    std::vector<std::vector<std::string>> d;              // d[j-1][i]: recorded value of input i for witness j
    std::vector<std::string> a;                           // A propositions kept as outputs
};

struct Reduction {
    Specification spec;  // LTL over enlarged outputs
    WitnessLayout layout;
    SubformulaTable table;
};

// sum of NBW sizes over the existential path bodies
int witness_count(const Formula& f, const std::vector<std::string>& inputs, const std::vector<std::string>& outputs);
int witness_count(const Specification& spec);
// Witness IDs that already make the reduction complete. A path sitting in an
// accepting true-loop state constrains nothing and can share the ID of any
// other path through the same node, so those states are not counted.
int sufficient_witnesses(const Formula& f, const std::vector<std::string>& inputs,
                         const std::vector<std::string>& outputs);
int sufficient_witnesses(const Specification& spec);

Reduction reduce(const Specification& spec, std::optional<int> k = std::nullopt);
inline Reduction bounded_reduce(const Specification& spec, int k) { return reduce(spec, k); }

// drop auxiliary outputs
Machine project(const Machine& m, const Specification& original);

// Reduce, run the LTL loop, project. A realizable result passes mc_ctl of the
// original formula. An unrealizable verdict with k below sufficient_witnesses
// is reported as BoundExhausted. Default k: witness_count, or
// sufficient_witnesses when racing the dual.
SynthResult synth_via_ltl(const SynthProblem& p, std::optional<int> k = std::nullopt);

}  // namespace sk
