#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "synthkit/formula.hpp"
#include "synthkit/spec.hpp"

using namespace sk;

TEST_CASE("pnf and negation preserve the semantics") {
    const std::vector<std::string> props{"a", "b", "c"};
    const auto words = oracle::all_lassos(3, 2, 3);
    std::mt19937 rng(99);
    for (int i = 0; i < 300; ++i) {
        Formula f = oracle::random_formula(rng, props, 4, true);
        Formula p = to_pnf(f);
        Formula n = negate(f);
        CAPTURE(to_string(f));
        REQUIRE(is_pnf(p));
        REQUIRE(is_pnf(n));
        for (auto& w : words) {
            const bool v = oracle::eval(f, w, props);
            CHECK(oracle::eval(p, w, props) == v);
            CHECK(oracle::eval(n, w, props) != v);
        }
        CHECK(equal(to_pnf(p), p));
        CHECK(equal(parse_formula(to_string(p)), p));
    }
}
