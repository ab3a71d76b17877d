#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "synthkit/machine.hpp"

using namespace sk;

namespace {

// the two-state resettable arbiter: grant one step after a request
Machine arbiter() {
    Machine m = Machine::blank(Semantics::Moore, {"r"}, {"g"}, 2);
    m.next = {{0, 1}, {0, 0}};
    m.out = {{0}, {1}};
    return m;
}

}  // namespace

TEST_CASE("letters") {
    Machine m = arbiter();
    CHECK(m.dirs() == 2);
    CHECK(m.props() == std::vector<std::string>{"r", "g"});
    CHECK(m.joint(1, 1) == 0b11);
    CHECK(m.joint(0, 1) == 0b01);
}

TEST_CASE("dot round-trip") {
    std::mt19937 rng(11);
    for (auto kind : {Semantics::Moore, Semantics::Mealy}) {
        for (int i = 0; i < 20; ++i) {
            Machine m = oracle::random_machine(rng, kind, {"a", "b"}, {"x", "y"}, 1 + i % 4);
            Machine back = Machine::from_dot(m.to_dot());
            CHECK(back.kind == m.kind);
            CHECK(back.next == m.next);
            CHECK(back.out == m.out);
            CHECK(back.init == m.init);
            CHECK(equivalent(back, m));
        }
    }
}

TEST_CASE("malformed dot") {
    CHECK_THROWS_AS(Machine::from_dot("not a graph"), MachineError);
    CHECK_THROWS_AS(Machine::from_dot("digraph { }"), MachineError);
}

TEST_CASE("validate") {
    Machine m = arbiter();
    CHECK_NOTHROW(m.validate());
    m.next[1][0] = 5;
    CHECK_THROWS_AS(m.validate(), MachineError);
}

TEST_CASE("canonical drops unreachable states and keeps behaviour") {
    Machine m = arbiter().padded();
    CHECK(m.num_states == 3);
    Machine c = m.canonical();
    CHECK(c.num_states == 2);
    CHECK(equivalent(c, arbiter()));
    Machine swapped = Machine::blank(Semantics::Moore, {"r"}, {"g"}, 2);
    swapped.init = {1};
    swapped.next = {{1, 1}, {1, 0}};
    swapped.out = {{1}, {0}};
    CHECK(equivalent(swapped, arbiter()));
    CHECK(swapped.canonical().next == arbiter().next);
}

TEST_CASE("inequivalent machines") {
    Machine m = arbiter();
    m.next[0][1] = 0;
    CHECK_FALSE(equivalent(m, arbiter()));
}

TEST_CASE("projection removes outputs") {
    Machine m = Machine::blank(Semantics::Moore, {"r"}, {"g", "aux"}, 1);
    m.out[0][0] = 0b11;
    Machine p = m.project({"g"});
    CHECK(p.outputs == std::vector<std::string>{"g"});
    CHECK(p.out[0][0] == 1);
}

TEST_CASE("letter covers") {
    auto cs = cover_letters({0, 1, 2}, 2);
    for (Letter l = 0; l < 4; ++l) {
        bool in = false;
        for (auto& c : cs) in |= c.matches(l);
        CHECK(in == (l != 3));
    }
    CHECK(letter_cube_text(0b10, {"a", "b"}) == "!a b");
}
