#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qch/diophantine.hpp"
#include "qch/rational.hpp"

namespace qch {

/// Full-rank lattice in R^{d1+d2} with a physical/internal split. Columns of
/// `basis` are the generators.
struct LatticeBasis {
    int d1 = 0;
    int d2 = 0;
    Eigen::MatrixXd basis;
    double det_abs = 0.0;

    LatticeBasis() = default;
    LatticeBasis(int d1_, int d2_, Eigen::MatrixXd basis_);

    int dim() const { return d1 + d2; }
};

struct LatticePoint {
    Eigen::VectorXi coeffs;
    Eigen::VectorXd x1;
    Eigen::VectorXd x2;
};

/// Axis-aligned closed box; lo and hi must have equal sizes.
struct Box {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    static Box centered(const Eigen::VectorXd& half_widths);
    static Box interval(double lo, double hi);
    bool contains(const Eigen::VectorXd& x) const;
    bool empty() const;
};

/// Dual lattice: basis is the inverse transpose; covolumes are reciprocal.
LatticeBasis dual_basis(const LatticeBasis& L);

/// Gamma_a = g_a Z^2 with g_a = (1/2a) [[1, -a], [1, a]]; covolume 1/(2a).
LatticeBasis gamma_a_lattice(double a);
LatticeBasis gamma_a_lattice(const Rational& a);

enum class QuadraticRing { Auto, ZSqrtD, Maximal };

/// Diagonal embedding of a real quadratic ring: points (x + y sqrt(D), x - y sqrt(D)).
/// Returned as the dual of the scheme lattice; use dual_basis to obtain Gamma.
/// For D = 1 mod 4, Auto picks the maximal order with generator (1 + sqrt(D))/2.
LatticeBasis arithmetic_quadratic_lattice(long long D, QuadraticRing ring = QuadraticRing::Auto);

struct EnumOptions {
    // Candidate budget; the QCS_BUDGET environment variable overrides the default.
    std::size_t budget = 0;  // 0 = default_enumeration_budget()
};

std::size_t default_enumeration_budget();

/// All lattice points with x1 in box1 and x2 in box2 (closed boxes), complete
/// by construction: coefficient ranges come from certified componentwise
/// bounds via basis^{-1} and are narrowed one coordinate slab at a time.
/// Throws on budget exhaustion. Output sorted by coefficient vector.
std::vector<LatticePoint> enumerate_in_box(const LatticeBasis& L, const Box& box1,
                                           const Box& box2, const EnumOptions& opts = {});

/// Count-only / visitor variants used by the sampling hot paths.
void enumerate_in_box(const LatticeBasis& L, const Box& box1, const Box& box2,
                      const EnumOptions& opts,
                      const std::function<void(const LatticePoint&)>& visit);

struct BetaScanRow {
    double eps;
    double min_xi2;  // ∞-norm; equals the cap sentinel when nothing was found
    bool found;
};

struct BetaScan {
    std::vector<BetaScanRow> rows;
    double beta_hat;   // slope of log(min_xi2) against log(1/eps) over found rows
    bool complete;     // false when the budget cut the scan short
};

/// For each eps: min ||x2||_inf over nonzero points with ||x1||_inf < eps and
/// ||x2||_inf <= xi2_cap (repellence diagnostic, Def. of right-repellence).
BetaScan beta_repellence_scan(const LatticeBasis& L, const std::vector<double>& eps_list,
                              double xi2_cap, const EnumOptions& opts = {});

struct AlphaScan {
    double alpha_hat;  // max over scanned q of -log m(q) / log ||q||_inf
    bool infinite;     // some q had m(q) == 0 (rational entries)
    Eigen::VectorXi worst_q;
    double worst_m;
};

/// m(q) = min_p ||p + E q||_inf over integer p, scanned for 1 <= ||q||_inf <= q_max.
/// Rows with ||q||_inf == 1 are reported through worst_* only if m(q) == 0; the
/// exponent estimate uses ||q||_inf >= 2 where the log ratio is meaningful.
AlphaScan alpha_repellence_scan(const Eigen::MatrixXd& E, long long q_max);
/// Exact variant for the 1x1 case (diophantine parameters too fine for doubles).
AlphaScan alpha_repellence_scan(const Rational& e, long long q_max);

struct LiouvilleParam {
    double gamma = 0.0;
    std::vector<long long> levels;  // exponents n_1 < n_2 < ...
    Rational a_truncated;           // sum of 10^{-n_j}
    std::vector<BigInt> m_list;     // m_k = 10^{n_k}

    /// u_k = 2 m_k^{-gamma} when gamma * n_k is integral, else 2*10^{-ceil(gamma n_k)}.
    Rational u_k(std::size_t k) const;
};

/// Levels n_1 = 1, n_{j+1} = ceil((gamma+1) n_j); verifies exactly that
/// {m_k a}_Z <= 2 m_k^{-gamma} for every k < K. Throws if the digit cap makes
/// K infeasible, naming the largest feasible K.
LiouvilleParam liouville_param(double gamma, int K);

}  // namespace qch
