#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "synthkit/formula.hpp"

namespace sk {

enum class Semantics { Moore, Mealy };

struct Specification {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    Semantics semantics = Semantics::Moore;
    Formula formula;  // PNF; state formula (an LTL body is wrapped in A)

    bool is_input(const std::string& p) const;
    bool is_output(const std::string& p) const;
    // true iff the formula is A(quantifier-free body)
    bool is_ltl() const;
    // the quantifier-free body of an LTL specification
    Formula ltl_body() const;
    std::string to_text() const;
};

class SpecError : public std::runtime_error {
public:
    enum class Kind { Syntax, UndeclaredProposition, InputAtStatePosition, DuplicateProposition };
    SpecError(Kind k, int line, int col, const std::string& msg);
    Kind kind;
    int line;
    int col;
};

// Parse a full specification file.
Specification parse_spec(const std::string& text);

// Parse a formula; when `declared` is non-null every atom must be in it.
Formula parse_formula(const std::string& text, const std::set<std::string>* declared = nullptr);

// Throws InputAtStatePosition when an input atom occurs outside every path quantifier.
void check_state_formula(const Formula& f, const std::set<std::string>& inputs);

}  // namespace sk
