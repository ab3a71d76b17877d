#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "synthkit/ctl2ltl.hpp"
#include "synthkit/modelcheck.hpp"
#include "synthkit/synth.hpp"

using namespace sk;

namespace {

// random CTL* state formula over input r and output g
Formula state_formula(std::mt19937& rng, int depth) {
    const int c = static_cast<int>(rng() % (depth == 0 ? 2 : 6));
    if (c == 0) return atom("g", rng() % 2 == 0);
    if (c == 1 && depth == 0) return mk_true();
    auto path = [&] {
        Formula body = oracle::random_formula(rng, {"r", "g"}, 2, false);
        if (depth > 1 && rng() % 3 == 0) body = mk_and(body, eventually(state_formula(rng, depth - 1)));
        return body;
    };
    switch (c) {
        case 1:
        case 2: return path_a(path());
        case 3: return path_e(path());
        case 4: return mk_and(state_formula(rng, depth - 1), state_formula(rng, depth - 1));
        default: return mk_or(state_formula(rng, depth - 1), state_formula(rng, depth - 1));
    }
}

Specification spec_of(const Formula& f) {
    Specification s;
    s.inputs = {"r"};
    s.outputs = {"g"};
    s.formula = to_pnf(f);
    return s;
}

}  // namespace

TEST_CASE("direct and hesitant-automaton encodings agree") {
    std::mt19937 rng(31337);
    int realizable = 0, tried = 0;
    for (int i = 0; i < 40; ++i) {
        Specification s = spec_of(state_formula(rng, 2));
        CAPTURE(s.to_text());
        for (int n : {1, 2}) {
            ++tried;
            auto a = synth_at(s, Encoding::CtlDirect, n, {});
            auto b = synth_at(s, Encoding::CtlAht, n, {});
            CHECK(a.has_value() == b.has_value());
            if (a) {
                ++realizable;
                CHECK(mc_ctl(*a, s.formula).holds);
                CHECK(mc_ctl(*b, s.formula).holds);
            }
        }
    }
    MESSAGE(realizable << "/" << tried << " realizable");
    CHECK(realizable > 0);
    CHECK(realizable < tried);
}

TEST_CASE("reduction at the full witness count agrees with the direct encoding") {
    std::mt19937 rng(2718);
    int compared = 0;
    for (int i = 0; compared < 25 && i < 200; ++i) {
        Specification s = spec_of(state_formula(rng, 2));
        if (witness_count(s) > 3) continue;
        ++compared;
        CAPTURE(s.to_text());
        std::optional<int> direct;
        for (int n : {1, 2})
            if (synth_at(s, Encoding::CtlDirect, n, {})) {
                direct = n;
                break;
            }
        SynthProblem p;
        p.spec = s;
        p.sizes = {1, 2, 3, 4};
        SynthResult r = synth_via_ltl(p);
        if (r.status == SynthResult::Status::Realizable) {
            CHECK(mc_ctl(r.machine, s.formula).holds);
            // the projection is itself a candidate for the direct encoding
            if (r.machine.num_states <= 2) CHECK(direct.has_value());
            if (direct) CHECK(*direct <= r.machine.num_states);
        }
        if (direct) CHECK(r.status == SynthResult::Status::Realizable);
    }
    CHECK(compared == 25);
}

TEST_CASE("reduction at the sufficient witness count stays complete") {
    std::mt19937 rng(1618);
    int compared = 0, below = 0;
    for (int i = 0; compared < 25 && i < 300; ++i) {
        Specification s = spec_of(state_formula(rng, 2));
        const int k = sufficient_witnesses(s);
        if (k > 3) continue;
        ++compared;
        below += k < witness_count(s);
        CAPTURE(s.to_text());
        std::optional<int> direct;
        for (int n : {1, 2})
            if (synth_at(s, Encoding::CtlDirect, n, {})) {
                direct = n;
                break;
            }
        SynthProblem p;
        p.spec = s;
        p.sizes = {1, 2, 3, 4};
        SynthResult r = synth_via_ltl(p, k);
        if (r.status == SynthResult::Status::Realizable) CHECK(mc_ctl(r.machine, s.formula).holds);
        if (direct) CHECK(r.status == SynthResult::Status::Realizable);
    }
    MESSAGE(below << "/" << compared << " below the full witness count");
    CHECK(compared == 25);
    CHECK(below > 0);
}
