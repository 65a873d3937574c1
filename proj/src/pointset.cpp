#include "qch/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qch/parallel.hpp"
#include "qch/rng.hpp"

namespace qch {

TorusPoint sample_torus(const Scheme& s, std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    int n = s.lattice.dim();
    TorusPoint t;
    t.coeffs.resize(n);
    for (int i = 0; i < n; ++i) t.coeffs[i] = rng.next_double();
    Eigen::VectorXd x = s.lattice.basis * t.coeffs;
    t.g = x.head(s.lattice.d1);
    t.h = x.tail(s.lattice.d2);
    return t;
}

namespace {

bool window_accepts(const Window& w, const Eigen::VectorXd& internal) {
    switch (w.kind) {
        case WindowKind::Interval:
        case WindowKind::CenteredBox:
            return ((internal - w.center).cwiseAbs().array() <= w.half_widths.array()).all();
        case WindowKind::EuclideanBall:
            return (internal - w.center).norm() <= w.radius;
    }
    return false;
}

template <typename Visit>
void realize_visit(const Scheme& s, const TorusPoint& omega, const Box& region,
                   const EnumOptions& opts, Visit&& visit) {
    Box box1{region.lo - omega.g, region.hi - omega.g};
    Box wbox = s.window.bounding_box();
    Box box2{wbox.lo - omega.h, wbox.hi - omega.h};
    enumerate_in_box(s.lattice, box1, box2, opts, [&](const LatticePoint& p) {
        if (!window_accepts(s.window, p.x2 + omega.h)) return;
        Eigen::VectorXd x = p.x1 + omega.g;
        if (!region.contains(x)) return;
        visit(x);
    });
}

}  // namespace

PointSample realize_pointset(const Scheme& s, const TorusPoint& omega, const Box& region,
                             const EnumOptions& opts) {
    PointSample sample;
    sample.region = region;
    sample.origin = omega;
    sample.scheme_label = s.label;
    realize_visit(s, omega, region, opts,
                  [&](const Eigen::VectorXd& x) { sample.points.push_back(x); });
    return sample;
}

std::size_t count_points(const Scheme& s, const TorusPoint& omega, const Box& region,
                         const EnumOptions& opts) {
    std::size_t n = 0;
    realize_visit(s, omega, region, opts, [&](const Eigen::VectorXd&) { ++n; });
    return n;
}

VarianceEstimate variance_of_counts(const std::vector<double>& counts, double R,
                                    std::uint64_t seed) {
    std::size_t n = counts.size();
    if (n < 2) throw std::invalid_argument("variance_of_counts: need at least 2 samples");
    double mean = 0.0;
    for (double c : counts) mean += c;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m4 = 0.0;
    for (double c : counts) {
        double d = c - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    VarianceEstimate est;
    est.R = R;
    est.n_samples = n;
    est.mean_count = mean;
    est.variance = m2 * static_cast<double>(n) / static_cast<double>(n - 1);
    double v = std::max(0.0, m4 - m2 * m2);
    est.stderr_variance = std::sqrt(v / static_cast<double>(n));
    est.seed = seed;
    return est;
}

namespace {

Box euclidean_ball_box(int d, double R) {
    return Box{Eigen::VectorXd::Constant(d, -R), Eigen::VectorXd::Constant(d, R)};
}

}  // namespace

VarianceEstimate mc_number_variance(const Scheme& s, double R, std::size_t n_samples,
                                    std::uint64_t seed, const EnumOptions& opts) {
    if (n_samples < 2) throw std::invalid_argument("mc_number_variance: need n_samples >= 2");
    const int d1 = s.lattice.d1;
    const Box region = euclidean_ball_box(d1, R);
    std::vector<double> counts(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        TorusPoint omega = sample_torus(s, seed, i);
        if (d1 == 1) {
            counts[i] = static_cast<double>(count_points(s, omega, region, opts));
        } else {
            std::size_t c = 0;
            realize_visit(s, omega, region, opts, [&](const Eigen::VectorXd& x) {
                if (x.norm() <= R) ++c;
            });
            counts[i] = static_cast<double>(c);
        }
    });
    return variance_of_counts(counts, R, seed);
}

std::vector<AnvPoint> mc_anv_curve(const Scheme& s, const std::vector<double>& R_grid,
                                   std::size_t n_samples, std::uint64_t seed,
                                   const EnumOptions& opts) {
    std::vector<AnvPoint> curve;
    for (std::size_t k = 0; k < R_grid.size(); ++k) {
        std::uint64_t sub_seed = seed ^ CounterRng::mix(0xA5F0 + k);
        VarianceEstimate est = mc_number_variance(s, R_grid[k], n_samples, sub_seed, opts);
        double vol = unit_ball_volume(s.lattice.d1) * std::pow(R_grid[k], s.lattice.d1);
        curve.push_back({R_grid[k], est.variance, est.variance / vol, est.stderr_variance / vol});
    }
    return curve;
}

namespace {

std::size_t poisson_count(CounterRng& rng, double lambda) {
    // product-of-uniforms method, chunked so exp(-lambda) stays in range
    std::size_t total = 0;
    while (lambda > 500.0) {
        double chunk = 500.0;
        double limit = std::exp(-chunk);
        double prod = 1.0;
        std::size_t k = 0;
        for (;;) {
            prod *= rng.next_double();
            if (prod < limit) break;
            ++k;
        }
        total += k;
        lambda -= chunk;
    }
    double limit = std::exp(-lambda);
    double prod = 1.0;
    std::size_t k = 0;
    for (;;) {
        prod *= rng.next_double();
        if (prod < limit) break;
        ++k;
    }
    return total + k;
}

}  // namespace

PointSample poisson_sampler(double intensity, const Box& region, std::uint64_t seed,
                            std::uint64_t index) {
    if (!(intensity > 0)) throw std::invalid_argument("poisson_sampler: intensity must be positive");
    if (region.empty()) throw std::invalid_argument("poisson_sampler: empty region");
    Eigen::VectorXd widths = region.hi - region.lo;
    double vol = widths.prod();
    CounterRng rng(seed, index ^ 0x50150ull);
    std::size_t n = poisson_count(rng, intensity * vol);
    PointSample sample;
    sample.region = region;
    sample.scheme_label = "poisson";
    int d = static_cast<int>(region.lo.size());
    sample.origin.g = Eigen::VectorXd::Zero(d);
    sample.origin.h = Eigen::VectorXd::Zero(0);
    sample.origin.coeffs = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXd x(d);
        for (int j = 0; j < d; ++j) x[j] = region.lo[j] + widths[j] * rng.next_double();
        sample.points.push_back(x);
    }
    return sample;
}

MeyerReport meyer_checks(const PointSample& p) {
    return meyer_checks(p, meyer_checks(p, 0.0).covering_radius);
}

MeyerReport meyer_checks(const PointSample& p, double margin) {
    if (p.points.size() < 2) throw std::invalid_argument("meyer_checks: need at least 2 points");
    MeyerReport rep;
    const int d = static_cast<int>(p.points.front().size());
    if (d == 1) {
        std::vector<double> xs;
        xs.reserve(p.points.size());
        for (auto& x : p.points) xs.push_back(x[0]);
        std::sort(xs.begin(), xs.end());
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < xs.size(); ++i) min_gap = std::min(min_gap, xs[i] - xs[i - 1]);
        rep.min_gap = min_gap;

        double lo = p.region.lo[0] + margin, hi = p.region.hi[0] - margin;
        double cover = 0.0;
        auto dist_to_nearest = [&](double x) {
            auto it = std::lower_bound(xs.begin(), xs.end(), x);
            double best = std::numeric_limits<double>::infinity();
            if (it != xs.end()) best = std::min(best, *it - x);
            if (it != xs.begin()) best = std::min(best, x - *(it - 1));
            return best;
        };
        // the covering radius is attained at gap midpoints or region ends
        cover = std::max(dist_to_nearest(lo), dist_to_nearest(hi));
        for (std::size_t i = 1; i < xs.size(); ++i) {
            double mid = 0.5 * (xs[i - 1] + xs[i]);
            if (mid >= lo && mid <= hi) cover = std::max(cover, 0.5 * (xs[i] - xs[i - 1]));
        }
        rep.covering_radius = cover;

        // integer-translate detection: all points within 1e-9 of t + Z
        double t = xs.front() - std::floor(xs.front());
        bool on_z = true;
        for (double x : xs)
            if (std::abs(x - t - std::nearbyint(x - t)) > 1e-9) {
                on_z = false;
                break;
            }
        if (on_z) {
            std::vector<long long> hits;
            hits.reserve(xs.size());
            for (double x : xs) hits.push_back(static_cast<long long>(std::nearbyint(x - t)));
            long long z_lo = static_cast<long long>(std::ceil(lo - t));
            long long z_hi = static_cast<long long>(std::floor(hi - t));
            bool covered = true;
            for (long long z = z_lo; z <= z_hi && covered; ++z)
                covered = std::binary_search(hits.begin(), hits.end(), z) ||
                          std::binary_search(hits.begin(), hits.end(), z - 1);
            rep.two_syndetic_in_z = covered;
        }
        return rep;
    }

    // d >= 2: exact min gap, grid-probe covering radius
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.points.size(); ++i)
        for (std::size_t j = i + 1; j < p.points.size(); ++j)
            min_gap = std::min(min_gap, (p.points[i] - p.points[j]).norm());
    rep.min_gap = min_gap;
    Eigen::VectorXd lo = p.region.lo.array() + margin, hi = p.region.hi.array() - margin;
    const int probes = 24;
    double cover = 0.0;
    std::vector<int> idx(d, 0);
    for (;;) {
        Eigen::VectorXd x(d);
        for (int k = 0; k < d; ++k)
            x[k] = lo[k] + (hi[k] - lo[k]) * (idx[k] + 0.5) / probes;
        double best = std::numeric_limits<double>::infinity();
        for (auto& q : p.points) best = std::min(best, (x - q).norm());
        cover = std::max(cover, best);
        int k = 0;
        while (k < d && ++idx[k] == probes) idx[k++] = 0;
        if (k == d) break;
    }
    rep.covering_radius = cover;
    return rep;
}

}  // namespace qch
