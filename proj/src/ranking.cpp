#include "synthkit/ranking.hpp"

#include <algorithm>

namespace sk {

Term buchi_cmp(int q, const std::vector<int>& f, const Term& r, const Term& r2) {
    if (contains(f, q)) return t_bool(true);
    return t_gt(r, r2);
}

Term cobuchi_cmp(int q, const std::vector<int>& f, const Term& r, const Term& r2) {
    if (contains(f, q)) return t_gt(r, r2);
    return t_ge(r, r2);
}

Term streett_cmp(int q, const Pairs& pairs, const std::vector<Term>& r, const std::vector<Term>& r2) {
    std::vector<Term> ks;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (contains(pairs[i].second, q)) continue;
        ks.push_back(contains(pairs[i].first, q) ? t_gt(r[i], r2[i]) : t_ge(r[i], r2[i]));
    }
    return t_and(std::move(ks));
}

Pairs parity_to_streett(const std::vector<int>& priority) {
    int maxp = 0;
    for (int p : priority) maxp = std::max(maxp, p);
    Pairs out;
    for (int i = 1; 2 * i - 1 <= maxp; ++i) {
        std::vector<int> a, g;
        for (std::size_t q = 0; q < priority.size(); ++q) {
            if (priority[q] == 2 * i - 1) a.push_back(static_cast<int>(q));
            if (priority[q] % 2 == 0 && priority[q] <= 2 * i - 2) g.push_back(static_cast<int>(q));
        }
        out.emplace_back(std::move(a), std::move(g));
    }
    return out;
}

namespace {

// q is in none of F_{j_1..j_upto}
Term avoids(int q, const Pairs& pairs, const std::vector<Term>& r, int upto) {
    std::vector<Term> ks;
    for (int m = 1; m <= upto; ++m)
        for (std::size_t x = 0; x < pairs.size(); ++x)
            if (contains(pairs[x].first, q)) ks.push_back(t_not(t_eq(r[2 * m - 1], t_int(static_cast<long long>(x) + 1))));
    return t_and(std::move(ks));
}

}  // namespace

Term rabin_cmp(int q, const Pairs& pairs, const std::vector<Term>& r, const std::vector<Term>& r2) {
    const int k = static_cast<int>(pairs.size());
    std::vector<Term> lines{t_gt(r[0], r2[0])};
    // prefix[i]: components 0..i-1 unchanged
    std::vector<Term> prefix{t_bool(true)};
    for (std::size_t i = 0; i < r.size(); ++i) prefix.push_back(t_and(prefix.back(), t_eq(r[i], r2[i])));
    for (int l = 1; l <= k; ++l) {
        const int jl = 2 * l - 1, dl = 2 * l;
        lines.push_back(t_and({prefix[jl], t_gt(r[jl], r2[jl]), avoids(q, pairs, r, l - 1)}));
        lines.push_back(t_and({prefix[dl], t_gt(r[dl], r2[dl]), avoids(q, pairs, r, l)}));
        std::vector<Term> in_i;
        for (std::size_t x = 0; x < pairs.size(); ++x)
            if (contains(pairs[x].second, q)) in_i.push_back(t_eq(r[jl], t_int(static_cast<long long>(x) + 1)));
        lines.push_back(t_and({prefix[dl], t_or(std::move(in_i)), avoids(q, pairs, r, l)}));
    }
    return t_or(std::move(lines));
}

std::vector<Term> rabin_domain(const std::vector<Term>& r, int k, long long bound) {
    std::vector<Term> out{t_ge(r[0], t_int(0)), t_le(r[0], t_int(bound))};
    for (int l = 1; l <= k; ++l) {
        out.push_back(t_ge(r[2 * l - 1], t_int(1)));
        out.push_back(t_le(r[2 * l - 1], t_int(k)));
        out.push_back(t_ge(r[2 * l], t_int(0)));
        out.push_back(t_le(r[2 * l], t_int(bound)));
    }
    return out;
}

RankScheme scheme_for(const Acceptance& acc, long long bound) {
    RankScheme s;
    s.acc = acc;
    s.bound = bound;
    if (acc.kind == AccKind::Parity) s.streett = parity_to_streett(acc.priority);
    if (acc.kind == AccKind::Streett) s.streett = acc.pairs;
    return s;
}

int RankScheme::components() const {
    switch (acc.kind) {
        case AccKind::Buchi:
        case AccKind::CoBuchi: return 1;
        case AccKind::GenBuchi:
        case AccKind::GenCoBuchi: return static_cast<int>(acc.sets.size());
        case AccKind::Streett:
        case AccKind::Parity: return static_cast<int>(streett.size());
        case AccKind::Rabin: return 1 + 2 * static_cast<int>(acc.pairs.size());
    }
    return 0;
}

std::vector<Term> RankScheme::domain(const std::vector<Term>& r) const {
    if (acc.kind == AccKind::Rabin) return rabin_domain(r, static_cast<int>(acc.pairs.size()), bound);
    std::vector<Term> out;
    for (auto& x : r) out.push_back(t_ge(x, t_int(0)));
    return out;
}

Term RankScheme::cmp(int q, const std::vector<Term>& r, const std::vector<Term>& r2) const {
    switch (acc.kind) {
        case AccKind::Buchi: return buchi_cmp(q, acc.set(), r[0], r2[0]);
        case AccKind::CoBuchi: return cobuchi_cmp(q, acc.set(), r[0], r2[0]);
        case AccKind::GenBuchi: {
            std::vector<Term> ks;
            for (std::size_t i = 0; i < acc.sets.size(); ++i) ks.push_back(buchi_cmp(q, acc.sets[i], r[i], r2[i]));
            return t_and(std::move(ks));
        }
        case AccKind::GenCoBuchi: {
            std::vector<Term> ks;
            for (std::size_t i = 0; i < acc.sets.size(); ++i) ks.push_back(cobuchi_cmp(q, acc.sets[i], r[i], r2[i]));
            return t_and(std::move(ks));
        }
        case AccKind::Streett:
        case AccKind::Parity: return streett_cmp(q, streett, r, r2);
        case AccKind::Rabin: return rabin_cmp(q, acc.pairs, r, r2);
    }
    return t_bool(false);
}

bool RankScheme::trivial() const { return components() == 0 && acc.kind != AccKind::Rabin; }

}  // namespace sk
