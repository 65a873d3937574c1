#include "qch/padic.hpp"

#include <cmath>
#include <stdexcept>

namespace qch {

namespace {
constexpr double kPi = 3.14159265358979323846;

double sinc_sq(double x) {  // (sin(pi x)/(pi x))^2 for x != 0
    double s = std::sin(kPi * x) / (kPi * x);
    return s * s;
}

int valuation_of(long long k, long long p) {
    int v = 0;
    while (k % p == 0) {
        k /= p;
        ++v;
    }
    return v;
}

}  // namespace

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Rational PAdicAtom::gamma() const {
    return Rational(BigInt(k), BigInt::pow(BigInt(p), static_cast<unsigned long long>(denom_exp)));
}

std::vector<PAdicAtom> padic_diffraction_atoms(long long p, long long max_height,
                                               int max_denom_exp) {
    if (!is_prime(p)) throw std::invalid_argument("padic: p must be prime");
    if (max_height < 1 || max_denom_exp < 0)
        throw std::invalid_argument("padic: bounds must be positive");
    std::vector<PAdicAtom> atoms;
    double pj = 1.0;
    for (int j = 0; j <= max_denom_exp; ++j, pj *= static_cast<double>(p)) {
        for (long long k = -max_height; k <= max_height; ++k) {
            if (k == 0) continue;
            if (j >= 1 && k % p == 0) continue;  // not in lowest terms
            PAdicAtom atom;
            atom.p = p;
            atom.k = k;
            atom.denom_exp = j;
            atom.valuation = j >= 1 ? -j : valuation_of(k, p);
            // integer gamma: sin(pi n) = 0 exactly
            atom.weight = j == 0 ? 0.0 : sinc_sq(static_cast<double>(k) / pj);
            atoms.push_back(atom);
        }
    }
    return atoms;
}

StealthReport stealth_check(long long p, long long max_height, int max_denom_exp) {
    double mass = 0.0;
    for (const PAdicAtom& a : padic_diffraction_atoms(p, max_height, max_denom_exp))
        if (a.valuation >= 0) mass += a.weight;
    return {mass, mass == 0.0};
}

double padic_ball_mass(long long p, int valuation_floor, long long max_height,
                       int max_denom_exp) {
    double mass = 0.0;
    for (const PAdicAtom& a : padic_diffraction_atoms(p, max_height, max_denom_exp))
        if (a.valuation >= valuation_floor) mass += a.weight;
    return mass;
}

}  // namespace qch
