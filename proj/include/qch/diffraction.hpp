#pragma once

#include <string>
#include <vector>

#include "qch/lattice.hpp"
#include "qch/window.hpp"

namespace qch {

/// Cut-and-project scheme: lattice in R^{d1+d2} plus acceptance window in R^{d2}.
struct Scheme {
    LatticeBasis lattice;
    Window window;
    std::string label;

    Scheme(LatticeBasis l, Window w, std::string lbl);
};

/// Finite truncation of a pure-point centered diffraction measure. Atoms are
/// sorted by ||xi1||; covol^{-2} is folded into the weights. tail_bound is a
/// certified upper bound on the mass omitted inside ||xi1|| <= eps_max
/// (infinite when the dual lattice has no internal-space separation to
/// certify the beyond-cap ladder with).
struct AtomicMeasure {
    int d1 = 1;
    Eigen::MatrixXd xi1;     // d1 x n, column per atom, ascending ||xi1||
    Eigen::VectorXd weights;
    Eigen::VectorXd norms;   // Euclidean norms of the columns
    Eigen::VectorXd cum;     // prefix sums of weights
    double eps_max = 0.0;
    double weight_floor = 0.0;
    double tail_bound = 0.0;
    double weight_at_zero = 0.0;  // captured mass at xi1 = 0, kept out of `atoms`

    std::size_t size() const { return static_cast<std::size_t>(weights.size()); }
};

struct DiffractionOptions {
    std::size_t budget = 0;    // enumeration budget (0 = default)
    double xi2_cap = 0.0;      // explicit internal cutoff; 0 = derive from weight_floor
};

/// Atoms (xi1, |chi_W^(xi2)|^2 / covol^2) over the dual lattice, with
/// ||xi1|| <= eps_max and weight >= weight_floor. The xi2 search cap comes
/// from inverting the window envelope at the floor, so every omitted atom is
/// below the floor; the omitted mass is certified into tail_bound.
AtomicMeasure centered_diffraction(const Scheme& s, double eps_max = 1.0,
                                   double weight_floor = 1e-14,
                                   const DiffractionOptions& opts = {});

struct MassResult {
    double mass;
    double tail_bound;
};

/// Mass of the Euclidean ball B_eps; eps must be within the certified region.
MassResult ball_mass(const AtomicMeasure& m, double eps);

/// Exact-rational route to eta^_{a,b}([-u,u]) for Gamma_a with window [-b,b]:
/// 4a^2 sum over resonant (m,n) with |am-n| <= u of |chi^_{[-b,b]}(am+n)|^2.
/// Sine arguments are reduced mod 1 in exact rationals; tail_bound covers
/// |m| > m_max. Requires 0 < u < 1.
MassResult diffraction_mass_gamma_ab(const Rational& a, const Rational& b,
                                     const Rational& u, const BigInt& m_max);

struct VarianceResult {
    double value;
    double truncation_bound;
};

/// Var_p(shape) = sum of w |chi_shape^(xi1)|^2 over the measure's atoms, plus
/// a reported truncation bound (floor/tail part at full shape volume, growth
/// part via the measured mass(B_r)/r^d constant).
VarianceResult spectral_variance(const AtomicMeasure& m, const Window& shape);

/// Streaming variant: accumulates the dual-lattice sum directly, so deep
/// truncations never materialize an atom table (the Fibonacci dual packs
/// ~sqrt(5) points per unit area). The reported truncation term estimates the
/// omitted xi1- and xi2-ranges from the scheme's intensity and envelopes.
VarianceResult spectral_variance(const Scheme& s, const Window& shape, double eps_max,
                                 double xi2_cap, std::size_t budget = 0);

double poisson_variance(int d, double intensity, double R);

double intensity(const Scheme& s);

double unit_ball_volume(int d);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<std::pair<double, double>> pairs;  // (log eps, log mass) envelope
    std::string method = "upper-envelope least squares";
    int dropped_zeros = 0;
};

/// Least squares on the dyadic upper envelope of (log eps, log mass).
/// Needs >= 4 pairs with eps strictly decreasing; zero masses are dropped.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& eps_mass);

enum class HyperClass { SubPoissonian, NotDetermined, SuperPoissonian };

/// Empirical classifier over the fitted range, not a theorem.
HyperClass classify_hyperuniform(const ScalingFit& fit, int d1, double margin = 0.1);

const char* to_string(HyperClass c);

/// Predicted small-ball envelope eps^{beta (d2 + theta)} from the repellence
/// criterion (constant 1).
double sufficient_condition_bound(double beta, int d2, double theta, double eps);

/// Var_p(phi_t) for the Gaussian phi_t(x) = exp(-pi t^2 ||x||^2):
/// sum of w t^{-2d} exp(-2 pi ||xi1||^2 / t^2) plus a Gaussian tail bound.
/// Throws when the tail bound exceeds 10% of the value.
VarianceResult gaussian_statistic_variance(const AtomicMeasure& m, double t, int d);

struct RigidityReport {
    bool pass = false;
    double c_hat = 0.0;
    std::vector<double> ratios;  // mass(B_eps_n) / eps_n^{2d+delta}
};

/// Ratios along a decreasing eps sequence; passes when the tail shows no
/// growth: the running max over the last half must stay within 1% of the max
/// over the first half (finite-scale stand-in for O(...), robust to the
/// log-periodic oscillation of self-similar spectra).
RigidityReport rigidity_check(const AtomicMeasure& m, const std::vector<double>& eps_seq,
                              int d, double delta);

/// Fibonacci cut-and-project scheme: Gamma = {(x + y phi, x + y phi*)},
/// W = [-1, phi - 1]. covol = sqrt(5), intensity = phi / sqrt(5).
Scheme fibonacci_scheme();

/// Gamma_a lattice with window [-b, b].
Scheme gamma_a_scheme(double a, double b);

/// Real quadratic scheme: Gamma = dual of the diagonal O_K embedding, window [-b, b].
Scheme quadratic_scheme(long long D, double b);

/// Z^2 with window [-b, b] (degenerate test scheme; dense projection fails).
Scheme z2_scheme(double b);

}  // namespace qch
