#include <doctest.h>

#include "common.hpp"
#include "oracle.hpp"
#include "synthkit/ctl2ltl.hpp"
#include "synthkit/modelcheck.hpp"
#include "synthkit/synth.hpp"

using namespace sk;
using testing_support::load_spec;

namespace {

void reverify_ltl(const Machine& m, const Specification& s) {
    CHECK(mc_ltl(m, s.ltl_body()).holds);
    CHECK(mc_ctl(m, s.formula).holds);
    oracle::Word cex;
    const int bound = m.inputs.size() > 1 ? 5 : 7;
    CHECK(oracle::machine_lassos_satisfy(m, s.ltl_body(), bound, &cex));
}

void reverify_ctl(const Machine& m, const Specification& s) {
    CHECK(mc_ctl(m, s.formula).holds);
    CHECK(mc_aht(ctlstar_to_aht(s.formula, s.inputs, s.outputs), m));
}

}  // namespace

TEST_CASE("LTL corpus") {
    for (const char* name : {"arbiter_ltl.spec", "delay.spec", "echo_mealy.spec", "mutex_ltl.spec", "arbiter2_ltl.spec"}) {
        CAPTURE(name);
        SynthProblem p;
        p.spec = load_spec(name);
        SynthResult r = synth_loop(p);
        REQUIRE(r.status == SynthResult::Status::Realizable);
        reverify_ltl(r.machine, p.spec);
    }
}

TEST_CASE("LTL corpus, unrealizable") {
    SynthProblem p;
    p.spec = load_spec("echo_moore.spec");
    p.dual_race = true;
    SynthResult r = synth_loop(p);
    REQUIRE(r.status == SynthResult::Status::Unrealizable);
    reverify_ltl(r.machine, dual_spec(p.spec));
}

TEST_CASE("CTL* corpus, both direct encodings") {
    for (const char* name : {"arbiter1.spec", "ctlstar.spec", "nonminimal.spec", "arbiter2.spec", "afag.spec",
                             "branching.spec", "fair_witness.spec"}) {
        for (auto enc : {Encoding::CtlDirect, Encoding::CtlAht}) {
            CAPTURE(name);
            CAPTURE(static_cast<int>(enc));
            SynthProblem p;
            p.spec = load_spec(name);
            p.encoding = enc;
            SynthResult r = synth_loop(p);
            REQUIRE(r.status == SynthResult::Status::Realizable);
            reverify_ctl(r.machine, p.spec);
        }
    }
}

TEST_CASE("CTL* corpus through the reduction") {
    for (const char* name : {"arbiter1.spec", "ctlstar.spec", "nonminimal.spec", "afag.spec", "branching.spec",
                             "fair_witness.spec"}) {
        CAPTURE(name);
        SynthProblem p;
        p.spec = load_spec(name);
        SynthResult r = synth_via_ltl(p);
        REQUIRE(r.status == SynthResult::Status::Realizable);
        reverify_ctl(r.machine, p.spec);
    }
}

TEST_CASE("unrealizable CTL* yields no machine from the direct encodings") {
    Specification s = load_spec("unreal_ctl.spec");
    for (auto enc : {Encoding::CtlDirect, Encoding::CtlAht})
        for (int n : {1, 2, 3}) CHECK_FALSE(synth_at(s, enc, n, {}).has_value());
}
