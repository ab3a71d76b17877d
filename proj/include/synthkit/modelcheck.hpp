#pragma once

#include <string>
#include <vector>

#include "synthkit/aht.hpp"
#include "synthkit/formula.hpp"
#include "synthkit/machine.hpp"

namespace sk {

// Letters over machine props (inputs then outputs).
struct Lasso {
    std::vector<Letter> stem;
    std::vector<Letter> loop;
};

struct McResult {
    bool holds = true;
    Lasso cex;             // LTL only
    std::string cex_text;  // "stem: ... loop: ..."
};

struct McOptions {
    std::size_t max_inputs = 12;  // caps 2^I enumeration
};

// LTL model checking via emptiness of M x NBW(!phi), nested DFS.
McResult mc_ltl(const Machine& m, const Formula& phi, const McOptions& opt = {});
// CTL* by bottom-up labeling; the verdict is the top formula at every initial state.
McResult mc_ctl(const Machine& m, const Formula& f, const McOptions& opt = {});
// Per-state satisfaction of a state formula.
std::vector<char> ctl_labels(const Machine& m, const Formula& f, const McOptions& opt = {});
// Acceptance of a Moore machine by an AHT (fixpoints per partition).
bool mc_aht(const HesitantTreeAutomaton& h, const Machine& m);

std::string lasso_text(const Lasso& l, const std::vector<std::string>& props);

class McError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sk
