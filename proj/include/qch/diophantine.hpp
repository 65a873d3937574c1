#pragma once

#include <vector>

#include "qch/rational.hpp"

namespace qch {

/// One continued-fraction convergent p/q of a rational alpha, together with
/// the signed defect theta = alpha*q - p (alternating in sign, shrinking).
struct Convergent {
    BigInt p;
    BigInt q;
    Rational theta;
};

/// Convergents of alpha from the Euclidean expansion, in order. Finite for
/// rational alpha; the last convergent is alpha itself (theta = 0).
std::vector<Convergent> continued_fraction(const Rational& alpha);

/// All m with 1 <= m <= m_max and frac_dist(alpha * m) <= u, exactly.
///
/// Works through the Ostrowski digit expansion over the convergent
/// denominators with exact branch-and-bound pruning, so sparse resonance sets
/// (e.g. u ~ 1e-80, m_max ~ 1e10) come out without a dense scan. Candidates
/// surviving the pruning are re-checked with frac_dist before being returned.
std::vector<BigInt> resonant_integers(const Rational& alpha, const Rational& u,
                                      const BigInt& m_max,
                                      std::size_t node_budget = 50'000'000);

}  // namespace qch
