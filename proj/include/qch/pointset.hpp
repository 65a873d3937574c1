#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qch/diffraction.hpp"

namespace qch {

/// Point of Omega = Gamma \ (G x H) in fundamental-domain coordinates.
struct TorusPoint {
    Eigen::VectorXd coeffs;  // componentwise in [0,1)
    Eigen::VectorXd g;       // physical image under the basis
    Eigen::VectorXd h;       // internal image
};

struct PointSample {
    std::vector<Eigen::VectorXd> points;
    Box region;
    TorusPoint origin;
    std::string scheme_label;
};

struct VarianceEstimate {
    double R = 0.0;
    std::size_t n_samples = 0;
    double mean_count = 0.0;
    double variance = 0.0;
    double stderr_variance = 0.0;
    std::uint64_t seed = 0;
};

/// Uniform draw from the fundamental domain; deterministic per (seed, index).
TorusPoint sample_torus(const Scheme& s, std::uint64_t seed, std::uint64_t index = 0);

/// Realized point set {gamma_1 + g : gamma_2 in W - h} inside `region`.
PointSample realize_pointset(const Scheme& s, const TorusPoint& omega, const Box& region,
                             const EnumOptions& opts = {});

/// Count-only variant of realize_pointset for the Monte Carlo loops.
std::size_t count_points(const Scheme& s, const TorusPoint& omega, const Box& region,
                         const EnumOptions& opts = {});

/// Monte Carlo number variance of #(Lambda ∩ B_R) over iid torus samples.
/// B_R is the Euclidean ball ([-R, R] when d1 = 1). The stderr uses the
/// asymptotic fourth-moment formula.
VarianceEstimate mc_number_variance(const Scheme& s, double R, std::size_t n_samples,
                                    std::uint64_t seed, const EnumOptions& opts = {});

struct AnvPoint {
    double R;
    double variance;
    double variance_over_vol;
    double stderr_over_vol;  // stderr of the normalized variance
};

std::vector<AnvPoint> mc_anv_curve(const Scheme& s, const std::vector<double>& R_grid,
                                   std::size_t n_samples, std::uint64_t seed,
                                   const EnumOptions& opts = {});

/// Homogeneous Poisson sample on a box; count is Poisson(intensity * vol),
/// locations iid uniform.
PointSample poisson_sampler(double intensity, const Box& region, std::uint64_t seed,
                            std::uint64_t index = 0);

/// Variance summary of a vector of counts (shared by the MC estimators).
VarianceEstimate variance_of_counts(const std::vector<double>& counts, double R,
                                    std::uint64_t seed);

struct MeyerReport {
    double min_gap = 0.0;
    double covering_radius = 0.0;
    std::optional<bool> two_syndetic_in_z;
};

/// Min pairwise gap and covering radius on the margin-shrunk region; when the
/// sample sits on a translate of Z, also checks that two translates cover it.
MeyerReport meyer_checks(const PointSample& p, double margin);

/// Default margin: the empirical covering radius itself, iterated once.
MeyerReport meyer_checks(const PointSample& p);

}  // namespace qch
