#pragma once

#include <string>
#include <utility>
#include <vector>

#include "synthkit/automaton.hpp"
#include "synthkit/smt.hpp"

namespace sk {

using Pairs = std::vector<std::pair<std::vector<int>, std::vector<int>>>;

// Rank comparisons. `r` is the annotation of (q,t), `r2` of the successor.
Term buchi_cmp(int q, const std::vector<int>& f, const Term& r, const Term& r2);
Term cobuchi_cmp(int q, const std::vector<int>& f, const Term& r, const Term& r2);
// pairs (A_i, G_i): infinitely often A_i implies infinitely often G_i
Term streett_cmp(int q, const Pairs& pairs, const std::vector<Term>& r, const std::vector<Term>& r2);
// min-even parity to Streett pairs
Pairs parity_to_streett(const std::vector<int>& priority);
// pairs (F_i, I_i): finitely often F_i and infinitely often I_i.
// r = (b, j_1, d_1, ..., j_k, d_k)
Term rabin_cmp(int q, const Pairs& pairs, const std::vector<Term>& r, const std::vector<Term>& r2);
std::vector<Term> rabin_domain(const std::vector<Term>& r, int k, long long bound);

struct RankScheme {
    Acceptance acc;
    long long bound = 0;  // |Q x T|, used by Rabin
    Pairs streett;        // parity converted

    int components() const;
    // side constraints on the annotation of one (q,t)
    std::vector<Term> domain(const std::vector<Term>& r) const;
    Term cmp(int q, const std::vector<Term>& r, const std::vector<Term>& r2) const;
    // true when every comparison out of q is the literal `true`
    bool trivial() const;
};

RankScheme scheme_for(const Acceptance& acc, long long bound);

}  // namespace sk
