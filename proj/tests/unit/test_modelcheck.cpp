#include <doctest.h>

#include "oracle.hpp"
#include "synthkit/aht.hpp"
#include "synthkit/modelcheck.hpp"
#include "synthkit/spec.hpp"

using namespace sk;

namespace {

Machine arbiter() {
    Machine m = Machine::blank(Semantics::Moore, {"r"}, {"g"}, 2);
    m.next = {{0, 1}, {0, 0}};
    m.out = {{0}, {1}};
    return m;
}

Machine never_grant() { return Machine::blank(Semantics::Moore, {"r"}, {"g"}, 1); }

Formula f(const char* text) { return to_pnf(parse_formula(text)); }

}  // namespace

TEST_CASE("LTL verdicts") {
    CHECK(mc_ltl(arbiter(), f("G (r -> F g)")).holds);
    CHECK_FALSE(mc_ltl(arbiter(), f("G (r -> X g)")).holds);  // a repeated request right after a grant
    CHECK(mc_ltl(arbiter(), f("G (r & !g -> X g)")).holds);
    CHECK_FALSE(mc_ltl(arbiter(), f("G (r -> g)")).holds);
    CHECK(mc_ltl(never_grant(), f("G !g")).holds);
    CHECK_FALSE(mc_ltl(never_grant(), f("G (r -> F g)")).holds);
}

TEST_CASE("LTL counterexamples are real lassos violating the formula") {
    for (const char* text : {"G (r -> F g)", "F g", "G F (r & g)", "G (g -> X g)"}) {
        for (const Machine& m : {arbiter(), never_grant()}) {
            McResult r = mc_ltl(m, f(text));
            if (r.holds) continue;
            CAPTURE(text);
            oracle::Word w{r.cex.stem, r.cex.loop};
            CHECK_FALSE(w.loop.empty());
            CHECK(oracle::is_machine_lasso(m, w));
            CHECK_FALSE(oracle::eval(f(text), w, m.props()));
            CHECK_FALSE(r.cex_text.empty());
        }
    }
}

TEST_CASE("CTL* verdicts") {
    Formula spec = f("E G !g & A G (r -> F g) & A G E F !g");
    CHECK(mc_ctl(arbiter(), spec).holds);
    CHECK_FALSE(mc_ctl(never_grant(), spec).holds);
    CHECK(mc_ctl(arbiter(), f("E F g & E G !g")).holds);
    CHECK_FALSE(mc_ctl(arbiter(), f("A F g")).holds);
    CHECK(mc_ctl(arbiter(), f("A G (g -> A X !g)")).holds);
    CHECK(mc_ctl(arbiter(), f("A (G F r -> G F g)")).holds);
}

TEST_CASE("state labels") {
    auto l = ctl_labels(arbiter(), f("E X g"));
    CHECK(l == std::vector<char>{1, 0});
    auto g = ctl_labels(arbiter(), f("g"));
    CHECK(g == std::vector<char>{0, 1});
}

TEST_CASE("multiple initial states") {
    Machine m = arbiter();
    m.init = {0, 1};
    CHECK_FALSE(mc_ctl(m, f("!g")).holds);
    CHECK(mc_ctl(m, f("A F !g")).holds);
}

TEST_CASE("input cap") {
    std::vector<std::string> ins;
    for (int i = 0; i < 3; ++i) ins.push_back("i" + std::to_string(i));
    Machine m = Machine::blank(Semantics::Moore, ins, {"g"}, 1);
    McOptions o;
    o.max_inputs = 2;
    CHECK_THROWS_AS(mc_ltl(m, f("G !g"), o), AutomatonError);
}

TEST_CASE("hesitant automaton acceptance") {
    Formula spec = f("E G !g & A G (r -> F g) & A G E F !g");
    HesitantTreeAutomaton h = ctlstar_to_aht(spec, {"r"}, {"g"});
    CHECK(mc_aht(h, arbiter()));
    CHECK_FALSE(mc_aht(h, never_grant()));
    Machine always = never_grant();
    always.out[0][0] = 1;
    CHECK_FALSE(mc_aht(h, always));
}

TEST_CASE("lasso text") {
    Lasso l{{0b01}, {0b10}};
    CHECK(lasso_text(l, {"r", "g"}).find("loop") != std::string::npos);
}
