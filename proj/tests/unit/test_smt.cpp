#include <doctest.h>

#include "synthkit/smt.hpp"

using namespace sk;

TEST_CASE("term printing") {
    Term x = t_app("x");
    CHECK(to_smtlib(t_and(x, t_bool(true))) == "x");
    CHECK(to_smtlib(t_or(x, t_bool(true))) == "true");
    CHECK(to_smtlib(t_int(-3)) == "(- 3)");
    CHECK(to_smtlib(t_le(t_app("f", {t_int(1)}), t_add(t_int(2), t_int(1)))) == "(<= (f 1) 3)");
    CHECK(is_lit(t_not(t_bool(false)), true));
}

TEST_CASE("query declarations round-trip") {
    SmtQuery q;
    q.declare("f", {Sort::Int, Sort::Bool}, Sort::Int);
    q.declare("b", {}, Sort::Bool);
    q.add(t_eq(t_app("f", {t_int(0), t_app("b")}), t_int(4)));
    q.add(t_bool(true));
    CHECK(q.assertions.size() == 1);
    CHECK_NOTHROW(q.check());
    auto decls = parse_declarations(q.serialize());
    REQUIRE(decls.size() == 2);
    CHECK(decls[0].name == "f");
    CHECK(decls[0].args == std::vector<Sort>{Sort::Int, Sort::Bool});
    CHECK(decls[0].result == Sort::Int);
    CHECK_THROWS_AS(q.declare("b", {}, Sort::Bool), SmtError);
}

TEST_CASE("sort errors") {
    SmtQuery q;
    q.declare("n", {}, Sort::Int);
    q.add(t_app("n"));
    CHECK_THROWS_AS(q.check(), SmtError);
    SmtQuery r;
    r.add(t_app("undeclared"));
    CHECK_THROWS_AS(r.check(), SmtError);
}

TEST_CASE("solver output parsing") {
    SmtQuery q;
    q.declare("f", {Sort::Int}, Sort::Int);
    q.declare("b", {}, Sort::Bool);
    std::string out =
        "sat\n(\n  (define-fun b () Bool true)\n"
        "  (define-fun f ((x!0 Int)) Int (ite (= x!0 0) 3 (ite (= x!0 1) (- 2) 7)))\n)\n";
    SolverVerdict v = parse_solver_output(out, q);
    REQUIRE(v.kind == SolverVerdict::Kind::Sat);
    CHECK(v.model.eval("b") == 1);
    CHECK(v.model.eval("f", {0}) == 3);
    CHECK(v.model.eval("f", {1}) == -2);
    CHECK(v.model.eval("f", {5}) == 7);
    CHECK(parse_solver_output("unsat\n", q).kind == SolverVerdict::Kind::Unsat);
    CHECK(parse_solver_output("unknown\n", q).kind == SolverVerdict::Kind::Unknown);
    CHECK_THROWS_AS(parse_solver_output("garbage", q), SmtError);
}

TEST_CASE("external solver") {
    SmtQuery q;
    q.declare("x", {}, Sort::Int);
    q.declare("p", {Sort::Int}, Sort::Bool);
    q.add(t_gt(t_app("x"), t_int(2)));
    q.add(t_lt(t_app("x"), t_int(4)));
    q.add(t_app("p", {t_app("x")}));
    q.add(t_not(t_app("p", {t_int(2)})));
    SolverVerdict v = solve(q);
    REQUIRE(v.kind == SolverVerdict::Kind::Sat);
    CHECK(v.model.eval("x") == 3);
    CHECK(v.model.eval("p", {3}) == 1);
    q.add(t_not(t_app("p", {t_int(3)})));
    CHECK(solve(q).kind == SolverVerdict::Kind::Unsat);
}

TEST_CASE("missing solver") {
    SmtQuery q;
    q.add(t_bool(false));
    SolverConfig c;
    c.path = "/nonexistent/solver";
    try {
        solve(q, c);
        FAIL("expected SolverNotFound");
    } catch (const SmtError& e) {
        CHECK(e.kind == SmtError::Kind::SolverNotFound);
    }
}

TEST_CASE("cancellation") {
    std::atomic<bool> cancel{true};
    SmtQuery q;
    q.declare("x", {}, Sort::Int);
    q.add(t_gt(t_app("x"), t_int(0)));
    SolverConfig c;
    c.cancel = &cancel;
    CHECK(solve(q, c).kind == SolverVerdict::Kind::Unknown);
}

TEST_CASE("brute force") {
    SmtQuery q;
    q.declare("f", {Sort::Int}, Sort::Int);
    q.add(t_eq(t_app("f", {t_int(0)}), t_int(1)));
    q.add(t_lt(t_app("f", {t_int(1)}), t_app("f", {t_int(0)})));
    std::map<std::string, BruteDomain> dom{{"f", BruteDomain{{{0, 1}}, {0, 1}}}};
    SolverVerdict v = brute_solve(q, dom);
    REQUIRE(v.kind == SolverVerdict::Kind::Sat);
    CHECK(v.model.eval("f", {1}) == 0);
    q.add(t_gt(t_app("f", {t_int(1)}), t_int(0)));
    CHECK(brute_solve(q, dom).kind == SolverVerdict::Kind::Unsat);
}

TEST_CASE("term evaluation") {
    Model m;
    m.funcs["x"] = FuncTable{{}, Sort::Int, {{{}, 5}}, 0, nullptr};
    CHECK(eval_term(t_ite(t_gt(t_app("x"), t_int(3)), t_sub(t_app("x"), t_int(1)), t_int(0)), m) == 4);
    CHECK(eval_term(t_implies(t_bool(false), t_bool(false)), m) == 1);
}
