#include <doctest.h>

#include <algorithm>

#include "common.hpp"
#include "synthkit/ctl2ltl.hpp"
#include "synthkit/modelcheck.hpp"

using namespace sk;
using testing_support::load_spec;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST_CASE("witness counts") {
    CHECK(witness_count(load_spec("ctlstar.spec")) == 5);
    CHECK(witness_count(load_spec("unreal_ctl.spec")) == 3);
    CHECK(witness_count(parse_spec("inputs r; outputs g; formula A F A G g;")) == 0);
    CHECK(witness_count(parse_spec("inputs r; outputs g; formula E G g;")) == 1);
}

TEST_CASE("sufficient witnesses skip accepting true loops") {
    CHECK(sufficient_witnesses(load_spec("unreal_ctl.spec")) == 2);
    CHECK(sufficient_witnesses(load_spec("ctlstar.spec")) == 3);
    CHECK(sufficient_witnesses(parse_spec("inputs r; outputs g; formula A G g;")) == 0);
    CHECK(sufficient_witnesses(parse_spec("inputs r; outputs g; formula E F g;")) == 1);
    CHECK(sufficient_witnesses(parse_spec("inputs r; outputs g; formula E true;")) == 1);
    for (auto name : {"arbiter1.spec", "arbiter2.spec", "ctlstar.spec", "nonminimal.spec", "unreal_ctl.spec",
                      "afag.spec", "branching.spec", "fair_witness.spec"}) {
        Specification s = load_spec(name);
        CHECK(sufficient_witnesses(s) <= witness_count(s));
    }
}

TEST_CASE("reduction layout") {
    Specification s = load_spec("ctlstar.spec");
    Reduction red = reduce(s);
    CHECK(red.layout.k == 5);
    CHECK(red.layout.width == 3);
    CHECK(red.spec.is_ltl());
    CHECK(red.spec.inputs == s.inputs);
    CHECK(red.spec.semantics == s.semantics);
    CHECK(red.layout.d.size() == 5);
    for (auto& row : red.layout.d) {
        REQUIRE(row.size() == 1);
        CHECK(has(red.spec.outputs, row[0]));
    }
    for (auto& [p, bits] : red.layout.v) {
        CHECK(bits.size() == 3);
        for (auto& b : bits) CHECK(has(red.spec.outputs, b));
    }
    CHECK(red.layout.v.size() == 3);
    CHECK(red.layout.a.size() == 1);
    CHECK(has(red.spec.outputs, "g"));
}

TEST_CASE("bounded reduction") {
    Reduction red = bounded_reduce(load_spec("ctlstar.spec"), 2);
    CHECK(red.layout.k == 2);
    CHECK(red.layout.width == 2);
    CHECK(red.layout.d.size() == 2);
}

TEST_CASE("no witnesses for an existential formula is immediately unrealizable") {
    Reduction red = bounded_reduce(load_spec("ctlstar.spec"), 0);
    CHECK(red.layout.k == 0);
    SolverVerdict v;
    CHECK_FALSE(synth_at(red.spec, Encoding::Ltl, 1, {}, {}, &v).has_value());
    CHECK(v.kind == SolverVerdict::Kind::Unsat);
}

TEST_CASE("UCW of a witness conjunct is at most one state larger") {
    const std::vector<std::string> props{"r", "g", "p", "d"};
    NbwOptions o;
    o.complete = false;
    for (const char* text : {"G !g", "F g", "X (g & X (g & F !g))", "G (r -> F g)", "F X !g", "g U (r & !g)"}) {
        CAPTURE(text);
        Formula phi = to_pnf(parse_formula(text));
        Formula wrapped = globally(implies(atom("p"), implies(globally(iff(atom("d"), atom("r"))), phi)));
        const int base = ucw_for(phi, props, o).num_states;
        const int n = ucw_for(to_pnf(wrapped), props, o).num_states;
        // the tableau may merge the waiting state with a leading next step
        CHECK(n >= base);
        CHECK(n <= base + 1);
    }
}

TEST_CASE("reduced formula grows linearly in k") {
    Specification s = load_spec("ctlstar.spec");
    std::vector<long> sizes;
    for (int k = 1; k <= 6; ++k) sizes.push_back(static_cast<long>(node_count(bounded_reduce(s, k).spec.formula)));
    // constant increments once the bit width is fixed (k = 4..6 share width 3)
    CHECK(sizes[4] - sizes[3] == sizes[5] - sizes[4]);
    for (int k = 1; k <= 6; ++k) CHECK(sizes[k - 1] <= sizes[0] * 2 * k + 64);
}

TEST_CASE("purely universal formulas need no witnesses") {
    Reduction red = reduce(parse_spec("inputs r; outputs g; formula A F A G g;"));
    CHECK(red.layout.k == 0);
    CHECK(red.layout.d.empty());
    CHECK(red.layout.v.empty());
}

TEST_CASE("projection") {
    Specification s = load_spec("ctlstar.spec");
    Reduction red = reduce(s);
    Machine m = Machine::blank(Semantics::Moore, red.spec.inputs, red.spec.outputs, 2);
    m.out[1][0] = ~Letter{0} & ((Letter{1} << red.spec.outputs.size()) - 1);
    Machine p = project(m, s);
    CHECK(p.outputs == s.outputs);
    CHECK(p.out[1][0] == 1);
    CHECK(p.out[0][0] == 0);
}

TEST_CASE("synthesis through the reduction") {
    SynthProblem p;
    p.spec = load_spec("ctlstar.spec");
    p.sizes = {1, 2, 3};
    SynthResult r = synth_via_ltl(p);
    REQUIRE(r.status == SynthResult::Status::Realizable);
    CHECK(r.machine.num_states == 2);
    CHECK(r.machine.outputs == p.spec.outputs);
    CHECK(mc_ctl(r.machine, p.spec.formula).holds);
}

TEST_CASE("unrealizable below the sufficient witness count is inconclusive") {
    SynthProblem p;
    p.spec = load_spec("unreal_ctl.spec");
    p.sizes = {1, 2};
    p.dual_race = true;
    SynthResult r = synth_via_ltl(p, 1);
    CHECK(r.status == SynthResult::Status::BoundExhausted);
    CHECK(r.note.find("inconclusive") != std::string::npos);
}
