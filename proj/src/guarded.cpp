#include "synthkit/guarded.hpp"

#include <algorithm>

namespace sk {

const char* to_string(GuardKind k) { return k == GuardKind::Disjunctive ? "disjunctive" : "conjunctive"; }
const char* to_string(GuardTarget t) { return t == GuardTarget::Property ? "property" : "deadlock"; }
const char* to_string(Fairness f) {
    switch (f) {
        case Fairness::None: return "none";
        case Fairness::Unconditional: return "unconditional";
        case Fairness::Strong: return "strong";
    }
    return "?";
}

GuardedCutoff guarded_cutoff(const GuardedQuery& q) {
    using E = GuardedError;
    if (q.b < 1) throw E(E::Kind::BadArgument, "|B| must be at least 1");
    const bool prop = q.target == GuardTarget::Property;
    if (prop && (!q.k || *q.k < 1)) throw E(E::Kind::BadArgument, "properties need k >= 1");
    if (prop && q.fairness == Fairness::Strong)
        throw E(E::Kind::Unsupported, "no cutoff for properties under strong fairness");
    if (!prop && q.fairness == Fairness::Unconditional)
        throw E(E::Kind::Unsupported, "deadlock detection is covered without fairness or under strong fairness");

    const int b = q.b, k = q.k.value_or(0);
    GuardedCutoff r;
    if (q.kind == GuardKind::Disjunctive) {
        if (prop)
            r.cutoff = q.fairness == Fairness::None ? b + k + 1 : 2 * b + k - 1;
        else {
            r.cutoff = 2 * b - 1;
            r.notes.push_back("asymptotically optimal, possibly not tight");
        }
        return r;
    }
    if (!prop && !q.one_conjunctive)
        throw E(E::Kind::RestrictionViolated, "conjunctive deadlock cutoffs require a 1-conjunctive system");
    if (q.fairness != Fairness::None && !q.initializing_runs)
        throw E(E::Kind::RestrictionViolated, "conjunctive cutoffs under fairness require initializing runs");
    if (prop) {
        r.cutoff = k + 1;
    } else {
        // 2|Q_B \ {init}|; at least one copy of B
        r.cutoff = std::max(2 * (b - 1), 1);
        r.notes.push_back("restricted to 1-conjunctive systems A || B^n");
    }
    if (q.fairness != Fairness::None) r.notes.push_back("restricted to initializing runs");
    return r;
}

}  // namespace sk
