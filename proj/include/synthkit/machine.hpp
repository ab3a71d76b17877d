#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "synthkit/automaton.hpp"
#include "synthkit/spec.hpp"

namespace sk {

// Deterministic Moore or Mealy machine. Input letters d range over 2^I with
// bit i = inputs[i]; output letters over 2^O likewise.
struct Machine {
    Semantics kind = Semantics::Moore;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    int num_states = 0;
    std::vector<int> init{0};
    std::vector<std::vector<int>> next;      // [t][d]
    std::vector<std::vector<Letter>> out;    // Moore: [t][0]; Mealy: [t][d]

    Letter dirs() const { return Letter{1} << inputs.size(); }
    Letter output(int t, Letter d) const { return kind == Semantics::Moore ? out[t][0] : out[t][d]; }
    // letter over (inputs, outputs) read when leaving t with input d
    Letter joint(int t, Letter d) const { return d | (output(t, d) << inputs.size()); }
    std::vector<std::string> props() const;

    // fresh machine with every entry zero
    static Machine blank(Semantics kind, std::vector<std::string> inputs, std::vector<std::string> outputs, int n);
    void validate() const;
    // BFS renumbering from the initial states; unreachable states dropped
    Machine canonical() const;
    // one extra unreachable copy of the last state
    Machine padded() const;
    Machine project(const std::vector<std::string>& keep) const;

    std::string to_dot() const;
    static Machine from_dot(const std::string& text);
};

class MachineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// same initial-state behaviour (product BFS over paired states)
bool equivalent(const Machine& a, const Machine& b);

// cubes covering exactly the given letters over n variables
std::vector<Cube> cover_letters(const std::vector<Letter>& letters, int n);
std::string letter_cube_text(Letter l, const std::vector<std::string>& props);

}  // namespace sk
