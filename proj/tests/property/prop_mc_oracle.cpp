#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "synthkit/modelcheck.hpp"

using namespace sk;

TEST_CASE("LTL model checking against bounded lasso enumeration") {
    std::mt19937 rng(555);
    int holds = 0;
    for (int i = 0; i < 300; ++i) {
        const auto sem = i % 3 == 0 ? Semantics::Mealy : Semantics::Moore;
        Machine m = oracle::random_machine(rng, sem, {"a"}, {"b"}, 1 + static_cast<int>(rng() % 3));
        Formula f = to_pnf(oracle::random_formula(rng, {"a", "b"}, 3, true));
        CAPTURE(to_string(f));
        McResult r = mc_ltl(m, f);
        oracle::Word w;
        const bool lassos = oracle::machine_lassos_satisfy(m, f, 8, &w);
        if (r.holds) {
            ++holds;
            CHECK(lassos);
        } else {
            oracle::Word cex{r.cex.stem, r.cex.loop};
            CHECK(oracle::is_machine_lasso(m, cex));
            CHECK_FALSE(oracle::eval(f, cex, m.props()));
        }
        // CTL* labeling on A f and E f
        CHECK(mc_ctl(m, path_a(f)).holds == r.holds);
        CHECK(mc_ctl(m, path_e(f)).holds == !mc_ltl(m, negate(f)).holds);
    }
    MESSAGE(holds << "/300 hold");
    CHECK(holds > 30);
    CHECK(holds < 270);
}
