#include <doctest.h>

#include "common.hpp"
#include "oracle.hpp"
#include "synthkit/modelcheck.hpp"
#include "synthkit/synth.hpp"

using namespace sk;
using testing_support::load_spec;

TEST_CASE("dual specification") {
    Specification s = load_spec("delay.spec");
    Specification d = dual_spec(s);
    CHECK(d.inputs == s.outputs);
    CHECK(d.outputs == s.inputs);
    CHECK(d.semantics == Semantics::Mealy);
    CHECK(d.is_ltl());
    CHECK(equal(d.ltl_body(), negate(s.ltl_body())));
    CHECK(dual_spec(d).semantics == Semantics::Moore);
}

TEST_CASE("LTL query shape") {
    Specification s = load_spec("arbiter_ltl.spec");
    SmtQuery q = build_query(s, Encoding::Ltl, 2);
    CHECK(q.declared("tau"));
    CHECK(q.declared("o_g"));
    CHECK_NOTHROW(q.check());
    CHECK(parse_declarations(q.serialize()).size() == q.decls.size());
}

TEST_CASE("LTL bounded synthesis") {
    Specification s = load_spec("arbiter_ltl.spec");
    SolverVerdict v;
    CHECK_FALSE(synth_at(s, Encoding::Ltl, 1, {}, {}, &v).has_value());
    CHECK(v.kind == SolverVerdict::Kind::Unsat);
    auto m = synth_at(s, Encoding::Ltl, 2, {});
    REQUIRE(m.has_value());
    CHECK(m->num_states == 2);
    CHECK(mc_ltl(*m, s.ltl_body()).holds);
    CHECK(oracle::machine_lassos_satisfy(*m, s.ltl_body(), 6));
}

TEST_CASE("synthesis loop verdicts") {
    SynthProblem p;
    p.spec = load_spec("delay.spec");
    SynthResult r = synth_loop(p);
    CHECK(r.status == SynthResult::Status::Realizable);
    CHECK(r.size == 2);
    CHECK(verify(r.machine, p.spec));

    p.spec = load_spec("echo_mealy.spec");
    r = synth_loop(p);
    CHECK(r.status == SynthResult::Status::Realizable);
    CHECK(r.size == 1);

    p.spec = load_spec("echo_moore.spec");
    r = synth_loop(p);
    CHECK(r.status == SynthResult::Status::BoundExhausted);
    p.dual_race = true;
    r = synth_loop(p);
    CHECK(r.status == SynthResult::Status::Unrealizable);
    CHECK(r.machine.kind == Semantics::Mealy);
    CHECK(verify(r.machine, dual_spec(p.spec)));
}

TEST_CASE("both CTL* encodings on the resettable arbiter") {
    Specification s = load_spec("arbiter1.spec");
    Machine expected = Machine::blank(Semantics::Moore, {"r"}, {"g"}, 2);
    expected.next = {{0, 1}, {0, 0}};
    expected.out = {{0}, {1}};
    for (auto enc : {Encoding::CtlDirect, Encoding::CtlAht}) {
        CAPTURE(static_cast<int>(enc));
        CHECK_FALSE(synth_at(s, enc, 1, {}).has_value());
        auto m = synth_at(s, enc, 2, {});
        REQUIRE(m.has_value());
        CHECK(mc_ctl(*m, s.formula).holds);
        CHECK(equivalent(*m, expected));
    }
}

TEST_CASE("encoding mismatch") {
    CHECK_THROWS(build_query(load_spec("arbiter1.spec"), Encoding::Ltl, 1));
}

TEST_CASE("extraction defaults") {
    Specification s = load_spec("delay.spec");
    Model empty;
    Machine m = extract_machine(empty, 2, s);
    CHECK(m.num_states == 2);
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("fixed machines in word encodings") {
    Specification s = load_spec("arbiter_ltl.spec");
    Machine never = Machine::blank(Semantics::Moore, {"r"}, {"g"}, 1);
    WordAutomaton u = ucw_for(s.ltl_body(), {"r", "g"});
    FixedMachine fm(never);
    SmtQuery q = encode_word_A(u, scheme_for(u.acc, u.num_states), fm);
    CHECK(solve(q).kind == SolverVerdict::Kind::Unsat);
    WordAutomaton n = ltl_to_nbw(negate(s.ltl_body()), {"r", "g"});
    CHECK(solve(encode_word_E(n, scheme_for(n.acc, n.num_states), fm)).kind == SolverVerdict::Kind::Sat);
}
