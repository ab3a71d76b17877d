#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "synthkit/automaton.hpp"
#include "synthkit/formula.hpp"

namespace sk {

// Positive Boolean formula over (direction, state) atoms. Directions are
// letters over the input propositions.
struct PBool;
using PB = std::shared_ptr<const PBool>;

struct PBool {
    enum class Kind { True, False, Atom, And, Or };
    Kind kind = Kind::True;
    Letter dir = 0;
    int state = -1;
    std::vector<PB> kids;
};

PB pb_true();
PB pb_false();
PB pb_atom(Letter dir, int state);
PB pb_and(std::vector<PB> kids);
PB pb_or(std::vector<PB> kids);
bool pb_eval(const PB& f, const std::function<bool(Letter, int)>& atom);
void pb_atoms(const PB& f, std::vector<std::pair<Letter, int>>& out);

enum class PartKind { N, U };

struct Partition {
    std::vector<int> states;
    PartKind kind = PartKind::N;
    int rank = 0;
};

struct HesitantTreeAutomaton {
    std::vector<std::string> inputs;   // directions 2^I
    std::vector<std::string> outputs;  // labels 2^O
    int num_states = 0;
    int initial = 0;
    std::vector<std::string> names;
    std::vector<std::vector<PB>> delta;  // [state][output letter]
    std::vector<Partition> partitions;
    std::vector<int> part_of;
    std::vector<char> acc;  // Buchi in N partitions, co-Buchi in U partitions

    int add_state(const std::string& name, int partition);
    // partition cover, lower-rank exits, N/U relatedness; throws AutomatonError
    void check() const;
    std::string to_text() const;
};

// Tree automaton over labels 2^O and directions 2^I read off a word automaton
// whose props are I ∪ O.
HesitantTreeAutomaton tree_variant(const WordAutomaton& a, const std::vector<std::string>& inputs,
                                   const std::vector<std::string>& outputs);

// AHT for a PNF state formula, assembled from per-subformula automata.
HesitantTreeAutomaton ctlstar_to_aht(const Formula& f, const std::vector<std::string>& inputs,
                                     const std::vector<std::string>& outputs, const NbwOptions& opt = {});

}  // namespace sk
