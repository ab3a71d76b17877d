#include <doctest.h>

#include "common.hpp"
#include "synthkit/modelcheck.hpp"
#include "synthkit/rings.hpp"

using namespace sk;

namespace {

int error_kind(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const RingError& e) {
        return static_cast<int>(e.kind);
    }
    return -1;
}

// inputs (r, rcv), outputs (g, tok, snd); grants for one step after receiving
Machine hand_template() {
    Machine m = Machine::blank(Semantics::Moore, {"r", "rcv"}, {"g", "tok", "snd"}, 3);
    m.init = {0, 1};
    m.out = {{0b110}, {0b000}, {0b011}};
    m.next = {{1, 1, 1, 1}, {1, 1, 2, 2}, {0, 0, 0, 0}};
    return m;
}

}  // namespace

TEST_CASE("indexed formula syntax") {
    IndexedFormula f = parse_indexed("forall i != j . G !(g_i & g_j)");
    REQUIRE(f.arity() == 2);
    CHECK(f.prefix[1].cond == IndexVar::Cond::Neq);
    CHECK(f.prefix[1].ref == "i");
    CHECK(parse_indexed(f.to_text()).to_text() == f.to_text());
    std::string base, var;
    CHECK(split_indexed("g_i", base, var));
    CHECK(base == "g");
    CHECK(var == "i");
    CHECK_FALSE(split_indexed("g", base, var));
    CHECK(error_kind([] { parse_indexed("G g_i"); }) == static_cast<int>(RingError::Kind::Syntax));
    CHECK(error_kind([] { parse_indexed("forall i, i . G g_i"); }) == static_cast<int>(RingError::Kind::Syntax));
    CHECK(error_kind([] { parse_indexed("forall i, j = k+1 . G g_i"); }) == static_cast<int>(RingError::Kind::Syntax));
}

TEST_CASE("ring cutoffs by prefix shape") {
    CHECK(cutoff_for(parse_indexed("forall i . G (r_i -> F g_i)")) == 2);
    CHECK(cutoff_for(parse_indexed("forall i, j = i+1 . G (g_i -> F g_j)")) == 3);
    CHECK(cutoff_for(parse_indexed("forall i != j . G !(g_i & g_j)")) == 4);
    CHECK(cutoff_for(parse_indexed("forall i != j, k = i+1 . G (g_j -> F g_k)")) == 5);
    CHECK(error_kind([] { cutoff_for(parse_indexed("forall i . G (r_i -> X g_i)")); }) ==
          static_cast<int>(RingError::Kind::UnsupportedShape));
    CHECK(error_kind([] { cutoff_for(parse_indexed("forall i != j, k != j . G g_k")); }) ==
          static_cast<int>(RingError::Kind::UnsupportedShape));
}

TEST_CASE("index tuples") {
    IndexedFormula neq = parse_indexed("forall i != j . G !(g_i & g_j)");
    CHECK(index_tuples(neq, 4, false).size() == 12);
    CHECK(index_tuples(neq, 4, true).size() == 3);
    IndexedFormula succ = parse_indexed("forall i, j = i+1 . G (g_i -> F g_j)");
    auto t = index_tuples(succ, 3, false);
    REQUIRE(t.size() == 3);
    CHECK(t[2] == std::vector<int>{3, 1});
    Formula inst = instantiate(neq, {1, 3});
    CHECK(atoms_of(inst) == std::set<std::string>{"g_1", "g_3"});
    CHECK(atoms_of(strip_index(parse_indexed("forall i . G (r_i -> F g_i)"))) == std::set<std::string>{"r", "g"});
}

TEST_CASE("ring specification files") {
    RingSpec rs = testing_support::load_ring("ring_arbiter.ring");
    CHECK(rs.inputs == std::vector<std::string>{"r"});
    CHECK(rs.guarantees.size() == 2);
    CHECK(rs.template_inputs() == std::vector<std::string>{"r", "rcv"});
    CHECK(rs.template_outputs() == std::vector<std::string>{"g", "tok", "snd"});
    CHECK(error_kind([] { parse_ring_spec("inputs tok; outputs g; param formula forall i . G g_i;"); }) ==
          static_cast<int>(RingError::Kind::Syntax));
    CHECK(error_kind([] { parse_ring_spec("inputs r; outputs g; bogus;"); }) == static_cast<int>(RingError::Kind::Syntax));
}

TEST_CASE("template checks") {
    CHECK_NOTHROW(check_template(hand_template()));
    Machine bad = hand_template();
    bad.out[1][0] = 0b100;
    CHECK(error_kind([&] { check_template(bad); }) == static_cast<int>(RingError::Kind::BadTemplate));
    bad = hand_template();
    bad.next[2][0] = 1;
    CHECK(error_kind([&] { check_template(bad); }) == static_cast<int>(RingError::Kind::BadTemplate));
}

TEST_CASE("composition keeps exactly one token") {
    for (auto sched : {Scheduler::Interleaving, Scheduler::Synchronous}) {
        for (int n = 2; n <= 4; ++n) {
            Machine ring = compose_ring(hand_template(), n, sched);
            std::vector<Formula> one;
            for (int i = 1; i <= n; ++i) {
                std::vector<Formula> ks{atom("tok_" + std::to_string(i))};
                for (int j = 1; j <= n; ++j)
                    if (j != i) ks.push_back(atom("tok_" + std::to_string(j), true));
                one.push_back(mk_and(ks));
            }
            CAPTURE(n);
            CHECK(mc_ltl(ring, globally(mk_or(one))).holds);
        }
    }
    CHECK(error_kind([] { compose_ring(hand_template(), 1, Scheduler::Interleaving); }) ==
          static_cast<int>(RingError::Kind::UnsupportedShape));
    CHECK(error_kind([] { compose_ring(hand_template(), 4, Scheduler::FullyAsynchronous); }) ==
          static_cast<int>(RingError::Kind::StateExplosion));
}

TEST_CASE("verification of a hand-written template") {
    RingSpec rs = testing_support::load_ring("ring_arbiter.ring");
    for (int n = 2; n <= 4; ++n) {
        for (auto& c : verify_ring(hand_template(), rs, n, Scheduler::Interleaving)) {
            CAPTURE(n);
            CAPTURE(c.property);
            CHECK(c.holds);
        }
    }
    // a template that never grants violates the response guarantee
    Machine lazy = hand_template();
    lazy.out[2][0] = 0b010;
    bool some_fail = false;
    for (auto& c : verify_ring(lazy, rs, 2, Scheduler::Interleaving)) some_fail |= !c.holds;
    CHECK(some_fail);
}

TEST_CASE("fairness formulas") {
    Formula f = fairness_formula(3, Scheduler::Interleaving);
    CHECK(atoms_of(f) == std::set<std::string>{"sch_1", "sch_2", "sch_3"});
}
