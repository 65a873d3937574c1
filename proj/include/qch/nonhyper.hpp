#pragma once

#include <vector>

#include "qch/diffraction.hpp"
#include "qch/lattice.hpp"

namespace qch {

/// Resonant frequencies Q_u = {m != 0 : {a m}_Z <= u/2}, exact arithmetic,
/// restricted to 1 <= |m| <= m_max. Positive representatives are returned;
/// the set is symmetric under negation.
std::vector<BigInt> q_u_set(const Rational& a, const Rational& u, const BigInt& m_max);

/// Grid search for b in (0, 1/(2a)) maximizing sin(2 pi {2 a b m_k}) toward 1,
/// i.e. steering 2 a b m_k to the quarter period; grid points are j/(2 a grid_n),
/// reduced mod 1 exactly. Ties take the smaller denominator.
Rational resonant_b_search(const Rational& a, const BigInt& m_k, long long grid_n);

/// Joint version: maximizes the minimum of sin^2(4 pi a b m_k) over several levels.
Rational resonant_b_search_joint(const Rational& a, const std::vector<BigInt>& m_ks,
                                 long long grid_n);

/// Lower bound (1/2) sum_{m in Q_u} (sin(4 pi a b m) / (pi m))^2 with exact
/// mod-1 reduction of the sine argument. The O(u) term is not subtracted.
double lower_bound_Eu(const Rational& a, const Rational& b, const Rational& u,
                      const BigInt& m_max);

struct CertificateRow {
    int k;                    // level index (1-based)
    Rational u_k;
    double mass;
    double mass_tail;
    double mass_lower_bound;
    double ratio;             // mass / u_k^delta
};

struct NonHyperCertificate {
    double gamma;
    double delta;
    LiouvilleParam a;
    Rational b;
    std::vector<CertificateRow> rows;
    double slack_constant;    // empirical C in the O(u) window of the lower bound
    bool pass;                // ratios strictly increasing, final/first >= 10
};

/// Finite-scale certificate of non-hyperuniformity along u_k = 2 m_k^{-gamma}:
/// builds the Liouville parameter, finds a jointly resonant b, and tabulates
/// masses via the exact diffraction formula. Requires delta > 2/gamma.
NonHyperCertificate nonhyper_certificate(double gamma, int K, double delta,
                                         long long grid_n = 10007);

}  // namespace qch
