#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "synthkit/aht.hpp"
#include "synthkit/automaton.hpp"
#include "synthkit/spec.hpp"

using namespace sk;

namespace {

void agree_on_all_words(const Formula& f, const std::vector<std::string>& props, int stem, int loop) {
    WordAutomaton a = ltl_to_nbw(f, props);
    for (auto& w : oracle::all_lassos(static_cast<int>(props.size()), stem, loop)) {
        CAPTURE(to_string(f));
        CHECK(oracle::accepts(a, w, props) == oracle::eval(f, w, props));
    }
}

}  // namespace

TEST_CASE("cubes") {
    Cube c{0b011, 0b001};
    CHECK(c.matches(0b101));
    CHECK_FALSE(c.matches(0b110));
    auto comp = complement({c});
    for (Letter l = 0; l < 8; ++l) {
        bool covered = false;
        for (auto& d : comp) covered |= d.matches(l);
        CHECK(covered != c.matches(l));
    }
    CHECK(is_tautology({Cube{1, 0}, Cube{1, 1}}));
    CHECK_FALSE(is_tautology({Cube{1, 0}}));
}

TEST_CASE("small NBWs agree with the semantics") {
    const std::vector<std::string> props{"a", "b"};
    for (const char* text : {"G F a", "F G a", "a U b", "a R b", "X X a", "G (a -> F b)", "F (a & X G !b)", "true",
                             "false", "G a & F !a"}) {
        agree_on_all_words(to_pnf(parse_formula(text)), props, 3, 3);
    }
}

TEST_CASE("GF a needs two states and the sink is counted apart") {
    WordAutomaton a = ltl_to_nbw(to_pnf(parse_formula("G F a")), {"a"});
    CHECK(a.is_complete());
    CHECK(count_nonsink_states(a) <= 3);
    NbwOptions o;
    o.complete = false;
    WordAutomaton b = ltl_to_nbw(to_pnf(parse_formula("G a")), {"a"}, o);
    CHECK(count_nonsink_states(b) == b.num_states);
}

TEST_CASE("UCW reads the negation universally") {
    const std::vector<std::string> props{"r", "g"};
    Formula f = to_pnf(parse_formula("G (r -> F g)"));
    WordAutomaton u = ucw_for(f, props);
    CHECK(u.mode == AutMode::Universal);
    CHECK(u.acc.kind == AccKind::CoBuchi);
    for (auto& w : oracle::all_lassos(2, 2, 3)) CHECK(oracle::accepts(u, w, props) == oracle::eval(f, w, props));
}

TEST_CASE("alphabet cap") {
    std::vector<std::string> props;
    for (int i = 0; i < 13; ++i) props.push_back("p" + std::to_string(i));
    try {
        ltl_to_nbw(atom("p0"), props);
        FAIL("expected AlphabetTooLarge");
    } catch (const AutomatonError& e) {
        CHECK(e.kind == AutomatonError::Kind::AlphabetTooLarge);
    }
    try {
        ltl_to_nbw(atom("zz"), {"a"});
        FAIL("expected UnknownProposition");
    } catch (const AutomatonError& e) {
        CHECK(e.kind == AutomatonError::Kind::UnknownProposition);
    }
}

TEST_CASE("text round-trip") {
    WordAutomaton a = ltl_to_nbw(to_pnf(parse_formula("a U (b & X a)")), {"a", "b"});
    WordAutomaton b = WordAutomaton::from_text(a.to_text());
    CHECK(b.num_states == a.num_states);
    CHECK(b.trans.size() == a.trans.size());
    CHECK(b.to_text() == a.to_text());
    CHECK_THROWS_AS(WordAutomaton::from_text("states 2\nbogus"), AutomatonError);
}

TEST_CASE("acceptance conditions on Inf sets") {
    std::vector<char> inf{1, 0, 1};
    CHECK(Acceptance::buchi({2}).satisfied_by(inf));
    CHECK_FALSE(Acceptance::buchi({1}).satisfied_by(inf));
    CHECK(Acceptance::cobuchi({1}).satisfied_by(inf));
    CHECK(Acceptance::streett({{{0}, {2}}}).satisfied_by(inf));
    CHECK_FALSE(Acceptance::streett({{{0}, {1}}}).satisfied_by(inf));
    CHECK(Acceptance::rabin({{{1}, {0}}}).satisfied_by(inf));
    CHECK_FALSE(Acceptance::rabin({{{0}, {2}}}).satisfied_by(inf));
    CHECK(Acceptance::parity({2, 1, 0}).satisfied_by(inf));
    CHECK_FALSE(Acceptance::parity({3, 0, 1}).satisfied_by(inf));
    CHECK(Acceptance::gen_buchi({{0}, {2}}).satisfied_by(inf));
    CHECK_FALSE(Acceptance::gen_cobuchi({{1}, {2}}).satisfied_by(inf));
    // the library agrees with the test oracle everywhere on random conditions
    std::mt19937 rng(3);
    for (auto kind : {AccKind::Buchi, AccKind::CoBuchi, AccKind::Streett, AccKind::Rabin, AccKind::Parity,
                      AccKind::GenBuchi, AccKind::GenCoBuchi}) {
        for (int i = 0; i < 20; ++i) {
            WordAutomaton a = oracle::random_automaton(rng, {"a"}, 4, kind, AutMode::Nondeterministic);
            for (int mask = 1; mask < 16; ++mask) {
                std::vector<char> v(4);
                std::set<int> s;
                for (int q = 0; q < 4; ++q)
                    if (mask >> q & 1) {
                        v[q] = 1;
                        s.insert(q);
                    }
                CHECK(a.acc.satisfied_by(v) == oracle::acc_holds(a.acc, s));
            }
        }
    }
}

TEST_CASE("hesitant automaton of the resettable arbiter") {
    Formula f = to_pnf(parse_formula("E G !g & A G (r -> F g) & A G E F !g"));
    HesitantTreeAutomaton h = ctlstar_to_aht(f, {"r"}, {"g"});
    CHECK_NOTHROW(h.check());
    CHECK(h.num_states == 7);
    bool has_n = false, has_u = false;
    for (auto& p : h.partitions) (p.kind == PartKind::N ? has_n : has_u) = true;
    CHECK(has_n);
    CHECK(has_u);
    for (auto& p : h.partitions)
        for (int q : p.states) CHECK(h.part_of[q] >= 0);
}

TEST_CASE("tree variant of a word automaton") {
    WordAutomaton a = ltl_to_nbw(to_pnf(parse_formula("G (r -> X g)")), {"r", "g"});
    HesitantTreeAutomaton h = tree_variant(a, {"r"}, {"g"});
    CHECK(h.num_states >= 1);
    CHECK(h.delta.size() == static_cast<std::size_t>(h.num_states));
    for (auto& row : h.delta) CHECK(row.size() == 2);
}

TEST_CASE("positive boolean formulas") {
    PB f = pb_and({pb_atom(0, 1), pb_or({pb_atom(1, 2), pb_false()})});
    CHECK(pb_eval(f, [](Letter d, int q) { return (d == 0 && q == 1) || (d == 1 && q == 2); }));
    CHECK_FALSE(pb_eval(f, [](Letter d, int) { return d == 0; }));
    std::vector<std::pair<Letter, int>> atoms;
    pb_atoms(f, atoms);
    CHECK(atoms.size() == 2);
}
