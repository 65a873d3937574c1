#include "qch/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qch {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Scheme::Scheme(LatticeBasis l, Window w, std::string lbl)
    : lattice(std::move(l)), window(std::move(w)), label(std::move(lbl)) {
    if (lattice.d2 != window.d2)
        throw std::invalid_argument("Scheme: lattice internal dimension must match window");
}

double intensity(const Scheme& s) { return volume(s.window) / s.lattice.det_abs; }

double unit_ball_volume(int d) {
    return std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double poisson_variance(int d, double intensity_, double R) {
    if (!(R > 0)) throw std::invalid_argument("poisson_variance: R must be positive");
    return intensity_ * unit_ball_volume(d) * std::pow(R, d);
}

namespace {

// Smallest ||v2||_inf over nonzero dual vectors with ||v1||_inf <= width; the
// separation constant of the internal projections of near-physical dual vectors.
// Returns `probe_limit` if no vector below it exists.
double internal_separation(const LatticeBasis& dual, double width, double probe_limit,
                           std::size_t budget) {
    double probe = std::min(1.0, probe_limit);
    for (;;) {
        double best = std::numeric_limits<double>::infinity();
        Box b1{Eigen::VectorXd::Constant(dual.d1, -width), Eigen::VectorXd::Constant(dual.d1, width)};
        Box b2{Eigen::VectorXd::Constant(dual.d2, -probe), Eigen::VectorXd::Constant(dual.d2, probe)};
        enumerate_in_box(dual, b1, b2, EnumOptions{budget}, [&](const LatticePoint& p) {
            if (p.coeffs.isZero()) return;
            best = std::min(best, p.x2.lpNorm<Eigen::Infinity>());
        });
        if (std::isfinite(best)) return best;
        if (probe >= probe_limit) return probe_limit;
        probe = std::min(probe * 4.0, probe_limit);
    }
}

}  // namespace

AtomicMeasure centered_diffraction(const Scheme& s, double eps_max, double weight_floor,
                                   const DiffractionOptions& opts) {
    if (!(eps_max > 0) || !(weight_floor > 0))
        throw std::invalid_argument("centered_diffraction: eps_max and weight_floor must be positive");
    const LatticeBasis dual = dual_basis(s.lattice);
    const double covol = s.lattice.det_abs;
    const double thr = covol * std::sqrt(weight_floor);
    double cap = opts.xi2_cap > 0 ? opts.xi2_cap : ft_envelope_inverse(s.window, thr);

    Box b1{Eigen::VectorXd::Constant(dual.d1, -eps_max), Eigen::VectorXd::Constant(dual.d1, eps_max)};
    Box b2{Eigen::VectorXd::Constant(dual.d2, -cap), Eigen::VectorXd::Constant(dual.d2, cap)};

    std::vector<double> coords, weights, norms;
    double dropped = 0.0;
    double at_zero = 0.0;
    const double inv_covol_sq = 1.0 / (covol * covol);
    const int d1 = s.lattice.d1;

    enumerate_in_box(dual, b1, b2, EnumOptions{opts.budget}, [&](const LatticePoint& p) {
        if (p.coeffs.isZero()) return;  // the excluded origin of Gamma^perp
        double n1 = p.x1.norm();
        if (n1 > eps_max) return;
        double w = std::norm(ft_indicator(s.window, p.x2)) * inv_covol_sq;
        if (w <= 0.0) return;
        if (n1 == 0.0) {
            at_zero += w;
            return;
        }
        if (w < weight_floor) {
            dropped += w;
            return;
        }
        for (int i = 0; i < d1; ++i) coords.push_back(p.x1[i]);
        weights.push_back(w);
        norms.push_back(n1);
    });

    // Beyond-cap omissions: ladder/packing bound from the internal separation
    // of dual vectors whose physical parts are within 2 eps_max.
    double beyond;
    {
        double sep = internal_separation(dual, 2.0 * eps_max, cap, opts.budget ? opts.budget : default_enumeration_budget());
        if (sep <= 0.0) {
            beyond = std::numeric_limits<double>::infinity();
        } else if (dual.d2 == 1) {
            double env_cap = ft_envelope(s.window, cap);
            beyond = 2.0 * (env_cap * env_cap + ft_envelope_sq_tail(s.window, cap) / (2.0 * sep)) *
                     inv_covol_sq;
        } else {
            double base = std::max(cap - sep, cap / 2.0);
            beyond = ft_envelope_sq_tail(s.window, base) / std::pow(sep, dual.d2) * inv_covol_sq;
        }
    }

    AtomicMeasure m;
    m.d1 = d1;
    m.eps_max = eps_max;
    m.weight_floor = weight_floor;
    m.tail_bound = dropped + beyond;
    m.weight_at_zero = at_zero;

    const std::size_t n = weights.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (norms[a] != norms[b]) return norms[a] < norms[b];
        return a < b;
    });

    m.xi1.resize(d1, n);
    m.weights.resize(n);
    m.norms.resize(n);
    m.cum.resize(n);
    double run = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = order[j];
        for (int i = 0; i < d1; ++i) m.xi1(i, j) = coords[src * d1 + i];
        m.weights[j] = weights[src];
        m.norms[j] = norms[src];
        run += weights[src];
        m.cum[j] = run;
    }
    return m;
}

MassResult ball_mass(const AtomicMeasure& m, double eps) {
    if (eps > m.eps_max)
        throw std::invalid_argument("ball_mass: outside certified region");
    if (m.size() == 0) return {0.0, m.tail_bound};
    // last index with norm <= eps
    const double* begin = m.norms.data();
    const double* end = begin + m.size();
    auto it = std::upper_bound(begin, end, eps);
    if (it == begin) return {0.0, m.tail_bound};
    return {m.cum[static_cast<Eigen::Index>(it - begin) - 1], m.tail_bound};
}

MassResult diffraction_mass_gamma_ab(const Rational& a, const Rational& b, const Rational& u,
                                     const BigInt& m_max) {
    if (!(u > Rational(0)) || !(u < Rational(1)))
        throw std::invalid_argument("diffraction_mass_gamma_ab: u must lie in (0,1)");
    if (a.sign() <= 0 || b.sign() <= 0)
        throw std::invalid_argument("diffraction_mass_gamma_ab: a and b must be positive");

    const double a_d = a.to_double();
    const double two_b = 2.0 * b.to_double();
    double sum = 0.0;

    for (const BigInt& m : resonant_integers(a, u, m_max)) {
        Rational am = a * Rational(m, BigInt(1));
        BigInt n_lo = (am - u).floor();  // scan a safe superset of [am-u, am+u]
        BigInt n_hi = (am + u).floor() + BigInt(1);
        for (BigInt n = n_lo; n <= n_hi; n += BigInt(1)) {
            Rational defect = am - Rational(n, BigInt(1));
            if (defect.abs() > u) continue;
            Rational xi2 = am + Rational(n, BigInt(1));
            double w;
            if (xi2.is_zero()) {
                w = two_b * two_b;
            } else {
                Rational arg = (Rational(2) * b * xi2).mod(Rational(2));
                double factor = arg.is_zero() || arg == Rational(1)
                                    ? 0.0
                                    : std::sin(kPi * arg.to_double());
                double x = xi2.to_double();
                w = factor * factor / (kPi * kPi * x * x);
            }
            sum += 2.0 * w;  // (m, n) and (-m, -n)
        }
    }

    double mass = 4.0 * a_d * a_d * sum;
    double M = m_max.to_double();
    double tail = (16.0 / (kPi * kPi)) / std::max(1.0, M);
    if (a_d * M < 1.0) tail = std::numeric_limits<double>::infinity();  // bound regime needs a m_max >= 1
    return {mass, tail};
}

namespace {

// Growth constant sup mass(B_r) / max(1, r)^d over the computed region.
double growth_constant(const AtomicMeasure& m, int d) {
    double c = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j)
        c = std::max(c, m.cum[j] / std::pow(std::max(1.0, m.norms[j]), d));
    return c;
}

}  // namespace

VarianceResult spectral_variance(const AtomicMeasure& m, const Window& shape) {
    if (shape.d2 != m.d1)
        throw std::invalid_argument("spectral_variance: shape dimension must match the measure");
    double value = 0.0;
    Eigen::VectorXd xi(m.d1);
    for (std::size_t j = 0; j < m.size(); ++j) {
        xi = m.xi1.col(j);
        value += m.weights[j] * std::norm(ft_indicator(shape, xi));
    }
    double vol = volume(shape);
    double c = growth_constant(m, m.d1);
    double e = m.eps_max;
    double env_e = ft_envelope(shape, e);
    // mass beyond eps_max via the measured growth constant (integration by parts)
    double growth_tail = c * (env_e * env_e * std::pow(e, m.d1) +
                              m.d1 * ft_envelope_sq_tail(shape, e) / 2.0);
    double trunc = m.tail_bound * vol * vol + growth_tail;
    return {value, trunc};
}

VarianceResult spectral_variance(const Scheme& s, const Window& shape, double eps_max,
                                 double xi2_cap, std::size_t budget) {
    if (shape.d2 != s.lattice.d1)
        throw std::invalid_argument("spectral_variance: shape dimension must match d1");
    const LatticeBasis dual = dual_basis(s.lattice);
    const double inv_covol_sq = 1.0 / (s.lattice.det_abs * s.lattice.det_abs);
    Box b1{Eigen::VectorXd::Constant(dual.d1, -eps_max), Eigen::VectorXd::Constant(dual.d1, eps_max)};
    Box b2{Eigen::VectorXd::Constant(dual.d2, -xi2_cap), Eigen::VectorXd::Constant(dual.d2, xi2_cap)};

    double value = 0.0;
    enumerate_in_box(dual, b1, b2, EnumOptions{budget}, [&](const LatticePoint& p) {
        if (p.coeffs.isZero()) return;
        if (p.x1.norm() > eps_max) return;
        double w = std::norm(ft_indicator(s.window, p.x2));
        if (w == 0.0) return;
        value += w * std::norm(ft_indicator(shape, p.x1));
    });
    value *= inv_covol_sq;

    // Mean-value tail completion. Per unit xi1 the diffraction carries mass
    // -> intensity (Plancherel over the internal fibre), and the shape factor
    // averages to half its envelope, so the omitted xi1-range contributes
    // i(p) * (1/2) * int_{|x|>E} env^2; same structure on the internal side.
    double ip = intensity(s);
    double xi1_completion = ip * ft_envelope_sq_tail(shape, eps_max) / 2.0;
    double lines = std::pow(2.0 * eps_max, s.lattice.d1) * s.lattice.det_abs;  // dual pts per unit xi2
    double shape_avg = volume(shape) / std::pow(2.0 * eps_max, s.lattice.d1);  // Plancherel mean
    double xi2_completion =
        lines * shape_avg * (ft_envelope_sq_tail(s.window, xi2_cap) / 2.0) * inv_covol_sq;
    value += xi1_completion + xi2_completion;
    // residual after completion: the fluctuating part of the tails
    double trunc = 0.5 * xi1_completion + 0.7 * xi2_completion;
    return {value, trunc};
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& eps_mass) {
    if (eps_mass.size() < 4)
        throw std::invalid_argument("fit_scaling: need at least 4 pairs");
    for (std::size_t i = 1; i < eps_mass.size(); ++i)
        if (!(eps_mass[i].first < eps_mass[i - 1].first))
            throw std::invalid_argument("fit_scaling: eps must be strictly decreasing");

    ScalingFit fit;
    // dyadic upper envelope: keep the largest mass in each band of eps
    std::map<int, std::pair<double, double>> bands;
    for (auto& [eps, mass] : eps_mass) {
        if (!(eps > 0)) throw std::invalid_argument("fit_scaling: eps must be positive");
        if (mass < 0) throw std::invalid_argument("fit_scaling: masses must be nonnegative");
        if (mass == 0.0) {
            ++fit.dropped_zeros;
            continue;
        }
        int band = static_cast<int>(std::floor(std::log2(eps)));
        auto it = bands.find(band);
        if (it == bands.end() || mass > it->second.second) bands[band] = {eps, mass};
    }
    if (bands.size() < 2) throw std::invalid_argument("insufficient decay data");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [band, pm] : bands) {
        double x = std::log(pm.first), y = std::log(pm.second);
        fit.pairs.emplace_back(x, y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(fit.pairs.size());
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

HyperClass classify_hyperuniform(const ScalingFit& fit, int d1, double margin) {
    if (fit.slope >= d1 + margin) return HyperClass::SubPoissonian;
    if (fit.slope <= d1 - margin) return HyperClass::SuperPoissonian;
    return HyperClass::NotDetermined;
}

const char* to_string(HyperClass c) {
    switch (c) {
        case HyperClass::SubPoissonian: return "sub_poissonian";
        case HyperClass::NotDetermined: return "not_determined";
        case HyperClass::SuperPoissonian: return "super_poissonian";
    }
    return "?";
}

double sufficient_condition_bound(double beta, int d2, double theta, double eps) {
    if (!(beta > 0) || !(theta > 0))
        throw std::invalid_argument("sufficient_condition_bound: beta and theta must be positive");
    return std::pow(eps, beta * (d2 + theta));
}

VarianceResult gaussian_statistic_variance(const AtomicMeasure& m, double t, int d) {
    if (!(t > 0)) throw std::invalid_argument("gaussian_statistic_variance: t must be positive");
    double pref = std::pow(t, -2.0 * d);
    double value = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j)
        value += m.weights[j] * pref * std::exp(-2.0 * kPi * m.norms[j] * m.norms[j] / (t * t));

    // Gaussian tail beyond the certified region, via the growth constant.
    double c = growth_constant(m, d);
    double e = m.eps_max;
    auto f = [&](double r) { return pref * std::exp(-2.0 * kPi * r * r / (t * t)); };
    double radial;
    if (d == 1) {
        radial = t * std::erfc(std::sqrt(2.0 * kPi) * e / t) / (2.0 * std::sqrt(2.0));
    } else {
        radial = 0.0;  // log-spaced quadrature
        double r = e;
        while (r < e + 20.0 * t) {
            double dr = std::max(t / 64.0, r * 1e-3);
            radial += std::exp(-2.0 * kPi * r * r / (t * t)) * std::pow(r, d - 1) * dr * 1.05;
            r += dr;
        }
    }
    double tail = c * (f(e) * std::pow(e, d) + d * pref * radial);
    if (value > 0 && tail > 0.1 * value)
        throw std::runtime_error("certified region too small");
    return {value, tail};
}

RigidityReport rigidity_check(const AtomicMeasure& m, const std::vector<double>& eps_seq,
                              int d, double delta) {
    RigidityReport rep;
    for (std::size_t i = 0; i < eps_seq.size(); ++i) {
        if (i > 0 && !(eps_seq[i] < eps_seq[i - 1]))
            throw std::invalid_argument("rigidity_check: eps_seq must decrease");
        double mass = ball_mass(m, eps_seq[i]).mass;
        rep.ratios.push_back(mass / std::pow(eps_seq[i], 2.0 * d + delta));
    }
    rep.c_hat = rep.ratios.empty() ? 0.0 : *std::max_element(rep.ratios.begin(), rep.ratios.end());
    // Self-similar measures make the ratio log-periodic (Fibonacci alternates
    // with period phi^2), so "non-increasing tail" is read off the running
    // max: the envelope over the last half must not rise above the earlier one.
    std::size_t half = std::max<std::size_t>(1, rep.ratios.size() / 2);
    double head_max = 0.0;
    for (std::size_t i = 0; i < half && i < rep.ratios.size(); ++i)
        head_max = std::max(head_max, rep.ratios[i]);
    rep.pass = true;
    for (std::size_t i = half; i < rep.ratios.size(); ++i)
        if (rep.ratios[i] > head_max * 1.01 + 1e-300) rep.pass = false;
    return rep;
}

Scheme fibonacci_scheme() {
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    double phi_conj = (1.0 - std::sqrt(5.0)) / 2.0;
    Eigen::MatrixXd b(2, 2);
    b << 1.0, phi, 1.0, phi_conj;
    Window w = Window::interval(phi / 2.0, (phi - 2.0) / 2.0);  // [-1, phi-1]
    return Scheme(LatticeBasis(1, 1, b), w, "fibonacci");
}

Scheme gamma_a_scheme(double a, double b) {
    return Scheme(gamma_a_lattice(a), Window::interval(b), "gamma_a");
}

Scheme quadratic_scheme(long long D, double b) {
    return Scheme(dual_basis(arithmetic_quadratic_lattice(D)), Window::interval(b),
                  "quadratic:" + std::to_string(D));
}

Scheme z2_scheme(double b) {
    return Scheme(LatticeBasis(1, 1, Eigen::MatrixXd::Identity(2, 2)), Window::interval(b), "z2");
}

}  // namespace qch
