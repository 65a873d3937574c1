#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qch/pointset.hpp"
#include "qch/rational.hpp"

namespace qch {

/// The doubling-map suspension family: B_o^(q) = [0, 1/2] u (q, 1) on the
/// circle, lifted through the binary natural extension. Valid q in (1/2, 3/4].
struct SuspensionParams {
    Rational q;
    explicit SuspensionParams(Rational q_);
};

/// Fourier coefficient of the centered indicator psi_o^(q) at k != 0:
/// (1 - e^{-pi i k})/(2 pi i k) + (e^{-2 pi i k q} - 1)/(2 pi i k).
std::complex<double> fourier_coeff_psi(const Rational& q, long long k);

struct Correlation {
    double value;
    double tail_bound;
};

/// c_n = <psi o T^n, psi> of the doubling map. With k_cutoff = 0 the lacunary
/// Fourier sum is evaluated in closed form through the second Bernoulli
/// polynomial (exact up to rounding); a positive k_cutoff selects the literal
/// truncated sum over 0 < |k| <= k_cutoff with its 1/|k|-envelope tail bound.
Correlation correlation(const Rational& q, int n, long long k_cutoff = 0);

/// Proven decay envelope: |c_n| <= envelope_constant(q) 2^{-n}.
double envelope_constant(const Rational& q);

struct CorrelationSeries {
    Rational q;
    std::vector<double> c;  // c_0 .. c_N
    long long k_cutoff;     // 0 = closed form
    std::vector<double> tail_bound_per_n;
    double envelope_2n;     // max |c_n| 2^n over the table
};

CorrelationSeries build_correlation_series(const Rational& q, int N, long long k_cutoff = 0);

/// sigma^2 = c_0 + 2 sum_{n>=1} c_n with a geometric tail bound.
Correlation sigma2(const Rational& q, int N, long long k_cutoff = 0);

/// C_f = sum n |c_n|, partial sum plus certified geometric tail.
Correlation cf_constant(const Rational& q, int N, long long k_cutoff = 0);

struct ClbRow {
    double R;
    double deviation;  // |sum rho_R(n) c_n - 2R sigma^2|
    double bound;      // 12 C_f + c_0 (+ numerical slack)
    bool pass;
};

/// Conze-Le Borgne window check at each R.
std::vector<ClbRow> clb_bound_check(const Rational& q, const std::vector<double>& R_list,
                                    int N = 60, long long k_cutoff = 0);

struct ComplexSum {
    std::complex<double> value;
    double tail_bound;
};

/// Coboundary obstruction sum_{n=0}^N psi_o^(2^{-n}) evaluated through the
/// displayed closed form; a modulus above tolerance (with converged tail)
/// reports "not an L^2 coboundary at scanned precision".
ComplexSum coboundary_obstruction(const Rational& q, int N);

/// theta(q) = sum_{n=0}^N e^{-2 pi i 2^n q} / 2^n, tail <= 2^{-N}.
ComplexSum theta_function(const Rational& q, int N);

struct OrbitSample {
    Rational q;
    long long n_min = 0;
    long long n_max = 0;
    double t_shift = 0.0;
    std::vector<std::uint8_t> member;  // membership of x_n for n in [n_min, n_max]
    std::vector<long long> hits;       // sorted Lambda_z within the same range
    bool two_syndetic = false;

    bool in_set(long long n) const { return member[static_cast<std::size_t>(n - n_min)] != 0; }
};

/// Orbit of the two-sided binary shift: hits = {n : x_n in B_o^(q)} where
/// x_n = 0.b_{n+1} b_{n+2} ... Membership decisions are certified bitwise
/// (adaptive precision, up to 60 + 512 bits) rather than floating-point.
/// Throws when a point cannot be separated from the window boundary.
OrbitSample simulate_orbit(const Rational& q, std::uint64_t seed, long long n_min,
                           long long n_max, double t_shift = 0.0);

/// Same walk over an injected bit word (deterministic orbit studies; the
/// all-zero word is the fixed point of the doubling map).
OrbitSample simulate_orbit(const Rational& q, const std::function<int(long long)>& bit,
                           long long n_min, long long n_max, double t_shift = 0.0);

/// Variance of #((Lambda_z - t) ∩ [-R, R]) over fresh orbits and t ~ U[0,1).
VarianceEstimate mc_suspension_variance(const Rational& q, double R, std::size_t n_samples,
                                        std::uint64_t seed);

}  // namespace qch
