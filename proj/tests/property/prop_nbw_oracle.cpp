#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "synthkit/automaton.hpp"

using namespace sk;

TEST_CASE("tableau automata agree with the semantics on every short lasso") {
    const std::vector<std::string> props{"a", "b"};
    const auto words = oracle::all_lassos(2, 4, 4);
    std::mt19937 rng(20240611);
    long disagreements = 0;
    for (int i = 0; i < 300; ++i) {
        Formula f = oracle::random_formula(rng, props, 4, false);
        REQUIRE(is_pnf(f));
        WordAutomaton a = ltl_to_nbw(f, props);
        for (auto& w : words) {
            const bool expect = oracle::eval(f, w, props);
            if (oracle::accepts(a, w, props) != expect) {
                ++disagreements;
                if (disagreements < 5) {
                    CAPTURE(to_string(f));
                    CAPTURE(w.stem.size());
                    CAPTURE(w.loop.size());
                    CHECK(oracle::accepts(a, w, props) == expect);
                }
            }
        }
    }
    CHECK(disagreements == 0);
}
