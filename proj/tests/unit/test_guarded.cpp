#include <doctest.h>

#include "synthkit/guarded.hpp"

using namespace sk;

namespace {

GuardedQuery query(GuardKind kind, int b, std::optional<int> k, GuardTarget t, Fairness f) {
    GuardedQuery q;
    q.kind = kind;
    q.b = b;
    q.k = k;
    q.target = t;
    q.fairness = f;
    return q;
}

int error_kind(const GuardedQuery& q) {
    try {
        guarded_cutoff(q);
    } catch (const GuardedError& e) {
        return static_cast<int>(e.kind);
    }
    return -1;
}

}  // namespace

TEST_CASE("table entries") {
    using K = GuardKind;
    using T = GuardTarget;
    using F = Fairness;
    CHECK(guarded_cutoff(query(K::Disjunctive, 3, 1, T::Property, F::None)).cutoff == 5);
    CHECK(guarded_cutoff(query(K::Disjunctive, 3, 2, T::Property, F::Unconditional)).cutoff == 7);
    CHECK(guarded_cutoff(query(K::Disjunctive, 4, std::nullopt, T::Deadlock, F::Strong)).cutoff == 7);
    CHECK(guarded_cutoff(query(K::Disjunctive, 4, std::nullopt, T::Deadlock, F::None)).cutoff == 7);
    CHECK(guarded_cutoff(query(K::Conjunctive, 9, 1, T::Property, F::None)).cutoff == 2);
    GuardedQuery q = query(K::Conjunctive, 4, std::nullopt, T::Deadlock, F::None);
    q.one_conjunctive = true;
    CHECK(guarded_cutoff(q).cutoff == 6);
    q.fairness = F::Strong;
    q.initializing_runs = true;
    CHECK(guarded_cutoff(q).cutoff == 6);
    q = query(K::Conjunctive, 4, 3, T::Property, F::Unconditional);
    q.initializing_runs = true;
    CHECK(guarded_cutoff(q).cutoff == 4);
}

TEST_CASE("k = 1 unfair disjunctive properties give |B| + 2") {
    for (int b = 1; b <= 20; ++b)
        CHECK(guarded_cutoff(query(GuardKind::Disjunctive, b, 1, GuardTarget::Property, Fairness::None)).cutoff == b + 2);
}

TEST_CASE("monotone in |B| and k") {
    for (auto kind : {GuardKind::Disjunctive, GuardKind::Conjunctive})
        for (auto f : {Fairness::None, Fairness::Unconditional})
            for (int b = 1; b < 10; ++b)
                for (int k = 1; k < 5; ++k) {
                    auto at = [&](int bb, int kk) {
                        GuardedQuery q = query(kind, bb, kk, GuardTarget::Property, f);
                        q.initializing_runs = true;
                        return guarded_cutoff(q).cutoff;
                    };
                    CHECK(at(b, k) <= at(b + 1, k));
                    CHECK(at(b, k) <= at(b, k + 1));
                }
}

TEST_CASE("notes") {
    auto r = guarded_cutoff(query(GuardKind::Disjunctive, 2, std::nullopt, GuardTarget::Deadlock, Fairness::None));
    REQUIRE(r.notes.size() == 1);
    CHECK(r.notes[0].find("possibly not tight") != std::string::npos);
    GuardedQuery q = query(GuardKind::Conjunctive, 2, std::nullopt, GuardTarget::Deadlock, Fairness::Strong);
    q.one_conjunctive = true;
    q.initializing_runs = true;
    CHECK(guarded_cutoff(q).notes.size() == 2);
}

TEST_CASE("positive even for a single-state template") {
    GuardedQuery q = query(GuardKind::Conjunctive, 1, std::nullopt, GuardTarget::Deadlock, Fairness::None);
    q.one_conjunctive = true;
    CHECK(guarded_cutoff(q).cutoff == 1);
}

TEST_CASE("restrictions and bad arguments") {
    using E = GuardedError::Kind;
    CHECK(error_kind(query(GuardKind::Conjunctive, 3, std::nullopt, GuardTarget::Deadlock, Fairness::None)) ==
          static_cast<int>(E::RestrictionViolated));
    CHECK(error_kind(query(GuardKind::Conjunctive, 3, 1, GuardTarget::Property, Fairness::Unconditional)) ==
          static_cast<int>(E::RestrictionViolated));
    CHECK(error_kind(query(GuardKind::Disjunctive, 3, 1, GuardTarget::Property, Fairness::Strong)) ==
          static_cast<int>(E::Unsupported));
    CHECK(error_kind(query(GuardKind::Disjunctive, 3, std::nullopt, GuardTarget::Deadlock, Fairness::Unconditional)) ==
          static_cast<int>(E::Unsupported));
    CHECK(error_kind(query(GuardKind::Disjunctive, 0, 1, GuardTarget::Property, Fairness::None)) ==
          static_cast<int>(E::BadArgument));
    CHECK(error_kind(query(GuardKind::Disjunctive, 2, std::nullopt, GuardTarget::Property, Fairness::None)) ==
          static_cast<int>(E::BadArgument));
}
