#pragma once

#include <vector>

#include "qch/rational.hpp"

namespace qch {

/// Diffraction atom of the Z[1/p] cut-and-project process: gamma = k / p^j
/// with weight |sinc(gamma)|^2 = (sin(pi gamma)/(pi gamma))^2, exactly zero on
/// integers. covol = 1, window [-1/2, 1/2].
struct PAdicAtom {
    long long p = 2;
    long long k = 0;        // numerator, coprime to p unless j = 0
    int denom_exp = 0;      // j
    int valuation = 0;      // v_p(gamma) = -j for j >= 1, else v_p(k)
    double weight = 0.0;

    Rational gamma() const;
};

/// Atoms gamma = k/p^j over |k| <= max_height, 0 <= j <= max_denom_exp,
/// gamma != 0, with gcd(k, p) = 1 when j >= 1.
std::vector<PAdicAtom> padic_diffraction_atoms(long long p, long long max_height,
                                               int max_denom_exp);

struct StealthReport {
    double mass_on_zp;  // mass over atoms with valuation >= 0 (exact zeros)
    bool pass;          // true iff the mass is bit-zero
};

StealthReport stealth_check(long long p, long long max_height, int max_denom_exp);

/// Sum of weights over atoms with valuation >= valuation_floor.
double padic_ball_mass(long long p, int valuation_floor, long long max_height,
                       int max_denom_exp);

bool is_prime(long long p);

}  // namespace qch
