#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "qch/diffraction.hpp"
#include "qch/rng.hpp"

using namespace qch;

namespace {

constexpr double kPi = 3.14159265358979323846;

AtomicMeasure make_measure(std::vector<std::pair<double, double>> atoms, double eps_max) {
    std::sort(atoms.begin(), atoms.end(), [](auto& a, auto& b) {
        return std::abs(a.first) < std::abs(b.first);
    });
    AtomicMeasure m;
    m.d1 = 1;
    m.eps_max = eps_max;
    m.weight_floor = 0.0;
    m.tail_bound = 0.0;
    Eigen::Index n = static_cast<Eigen::Index>(atoms.size());
    m.xi1.resize(1, n);
    m.weights.resize(n);
    m.norms.resize(n);
    m.cum.resize(n);
    double run = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        m.xi1(0, i) = atoms[static_cast<std::size_t>(i)].first;
        m.weights[i] = atoms[static_cast<std::size_t>(i)].second;
        m.norms[i] = std::abs(atoms[static_cast<std::size_t>(i)].first);
        run += m.weights[i];
        m.cum[i] = run;
    }
    return m;
}

}  // namespace

TEST_CASE("intensity of the standard schemes") {
    Scheme g = gamma_a_scheme(0.7, 0.2);
    CHECK(intensity(g) == doctest::Approx(4 * 0.7 * 0.2).epsilon(1e-12));  // (2b)/(1/2a)
    Scheme fib = fibonacci_scheme();
    double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(fib.lattice.det_abs == doctest::Approx(std::sqrt(5.0)));
    CHECK(intensity(fib) == doctest::Approx(phi / std::sqrt(5.0)));
    CHECK(volume(fib.window) == doctest::Approx(phi));
    // doubling the window doubles the intensity
    Scheme g2 = gamma_a_scheme(0.7, 0.4);
    CHECK(intensity(g2) == doctest::Approx(2 * intensity(g)));
}

TEST_CASE("uncentered atom at zero equals intensity squared") {
    for (const Scheme& s : {fibonacci_scheme(), quadratic_scheme(2, 0.3),
                            gamma_a_scheme(std::sqrt(2.0), 0.3), z2_scheme(0.5)}) {
        double atom0 = std::norm(ft_indicator(s.window, Eigen::VectorXd::Zero(1))) /
                       (s.lattice.det_abs * s.lattice.det_abs);
        double i2 = intensity(s) * intensity(s);
        CHECK(std::abs(atom0 - i2) <= 1e-10 * i2);
    }
}

TEST_CASE("Z^2 scheme with unit window has no centered diffraction below 1") {
    AtomicMeasure m = centered_diffraction(z2_scheme(0.5), 0.9, 1e-14);
    CHECK(m.size() == 0);
    CHECK(ball_mass(m, 0.9).mass == 0.0);
    CHECK(m.weight_at_zero == 0.0);  // exact zeros at (0, n)

    // with eps_max above 1 the integer atoms of weight 1 appear
    AtomicMeasure big = centered_diffraction(z2_scheme(0.5), 3.5, 1e-6);
    REQUIRE(big.size() == 6);  // +-1, +-2, +-3
    for (std::size_t j = 0; j < big.size(); ++j)
        CHECK(big.weights[static_cast<Eigen::Index>(j)] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Gamma_sqrt2 atoms match the (a m - n, a m + n) closed form") {
    double a = std::sqrt(2.0);
    Scheme s = gamma_a_scheme(a, 0.25);
    AtomicMeasure m = centered_diffraction(s, 0.5, 1e-14);
    REQUIRE(m.size() >= 2);

    // the (m, n) = (1, 1) atom sits at sqrt(2) - 1 with weight 8 |chi^(sqrt2+1)|^2
    double expected = 8.0 * std::norm(ft_indicator(s.window, Eigen::VectorXd::Constant(1, a + 1)));
    bool found = false;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (std::abs(m.xi1(0, static_cast<Eigen::Index>(j)) - (a - 1.0)) < 1e-9) {
            found = true;
            CHECK(m.weights[static_cast<Eigen::Index>(j)] ==
                  doctest::Approx(expected).epsilon(1e-10));
        }
    }
    CHECK(found);

    // matched-truncation brute force over the (m, n) parametrization
    DiffractionOptions opts;
    opts.xi2_cap = 50.0;
    AtomicMeasure cut = centered_diffraction(s, 0.5, 1e-300, opts);
    double brute = 0.0;
    for (int mm = -20; mm <= 20; ++mm)
        for (int nn = -60; nn <= 60; ++nn) {
            if (mm == 0 && nn == 0) continue;
            double xi1 = a * mm - nn, xi2 = a * mm + nn;
            if (std::abs(xi1) > 0.5 || std::abs(xi2) > 50.0) continue;
            brute += 8.0 * std::norm(ft_indicator(s.window, Eigen::VectorXd::Constant(1, xi2)));
        }
    CHECK(ball_mass(cut, 0.5).mass == doctest::Approx(brute).epsilon(1e-9));
}

TEST_CASE("ball_mass basics") {
    AtomicMeasure empty = make_measure({}, 1.0);
    CHECK(ball_mass(empty, 0.5).mass == 0.0);
    AtomicMeasure m = make_measure({{0.3, 1.0}, {-0.3, 1.0}, {0.7, 0.25}}, 1.0);
    CHECK(ball_mass(m, 0.2).mass == 0.0);
    CHECK(ball_mass(m, 0.3).mass == doctest::Approx(2.0));
    CHECK(ball_mass(m, 0.9).mass == doctest::Approx(2.25));
    CHECK(ball_mass(m, 0.5).mass <= ball_mass(m, 0.9).mass);  // monotone
    CHECK_THROWS_WITH_AS(ball_mass(m, 1.5), doctest::Contains("outside certified region"),
                         std::invalid_argument);
}

TEST_CASE("poisson_variance closed forms") {
    CHECK(poisson_variance(1, 1.0, 5.0) == doctest::Approx(10.0));
    CHECK(poisson_variance(2, 1.0, 1.0) == doctest::Approx(kPi));
    CHECK(poisson_variance(3, 2.0, 1.0) == doctest::Approx(8.0 * kPi / 3.0));
}

TEST_CASE("spectral variance of the integer comb equals the shifted-lattice law") {
    // Z^2 scheme atoms: weight-1 combs at integer xi1 (the xi2 = 0 column)
    AtomicMeasure m = centered_diffraction(z2_scheme(0.5), 2000.0, 1e-3);
    auto v_exact = [](double R) {
        double f = 2 * R - std::floor(2 * R);
        return f * (1 - f);
    };
    for (double R : {2.3, 0.9, 7.15}) {
        VarianceResult v = spectral_variance(m, Window::interval(R));
        CHECK(v.value == doctest::Approx(v_exact(R)).epsilon(2e-3));
    }
    // R = 2.5: sin(5 pi n) vanishes identically
    CHECK(spectral_variance(m, Window::interval(2.5)).value == doctest::Approx(0.0));
}

TEST_CASE("cross-path equality: exact formula vs enumerated measure") {
    CounterRng rng(23, 0);
    const BigInt M(300);
    for (int iter = 0; iter < 20; ++iter) {
        double a = 0.3 + 1.7 * rng.next_double();
        double b = 0.05 + (0.9 / (2 * a) - 0.05) * rng.next_double();
        double u = 0.02 + 0.33 * rng.next_double();
        Rational ar = Rational::from_double(a);
        Rational br = Rational::from_double(b);
        Rational ur = Rational::from_double(u);

        MassResult exact = diffraction_mass_gamma_ab(ar, br, ur, M);

        // matched truncation: |m| <= M corresponds to |xi2| <= 2 a M + u
        DiffractionOptions opts;
        opts.xi2_cap = 2 * a * 300 + u;
        Scheme s = gamma_a_scheme(a, b);
        AtomicMeasure measure = centered_diffraction(s, u, 1e-300, opts);
        double mass = ball_mass(measure, u).mass;

        double scale = std::max({exact.mass, mass, 1e-12});
        CHECK(std::abs(exact.mass - mass) <= 1e-8 * scale);
    }
}

TEST_CASE("diffraction_mass_gamma_ab contracts") {
    Rational a(7, 5), b(1, 4);
    CHECK_THROWS(diffraction_mass_gamma_ab(a, b, Rational(1), BigInt(10)));
    CHECK_THROWS(diffraction_mass_gamma_ab(a, b, Rational(3, 2), BigInt(10)));
    // no resonant m within range: mass 0
    MassResult none = diffraction_mass_gamma_ab(Rational::from_double(std::sqrt(2.0)), b,
                                                Rational(1, 100), BigInt(2));
    CHECK(none.mass == 0.0);
}

TEST_CASE("fit_scaling recovers synthetic exponents") {
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 10; ++i) {
        double eps = std::pow(10.0, -0.4 * i);
        pairs.emplace_back(eps, eps * eps);
    }
    ScalingFit fit = fit_scaling(pairs);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-6));

    std::vector<std::pair<double, double>> zeros;
    for (int i = 0; i < 6; ++i) zeros.emplace_back(std::pow(10.0, -i), 0.0);
    CHECK_THROWS_WITH_AS(fit_scaling(zeros), doctest::Contains("insufficient decay data"),
                         std::invalid_argument);
    CHECK_THROWS(fit_scaling({{1.0, 1.0}, {0.5, 0.5}}));
}

TEST_CASE("classify_hyperuniform thresholds") {
    ScalingFit fit;
    fit.slope = 2.0;
    CHECK(classify_hyperuniform(fit, 1) == HyperClass::SubPoissonian);
    fit.slope = 1.0;
    CHECK(classify_hyperuniform(fit, 1) == HyperClass::NotDetermined);
    fit.slope = 0.5;
    CHECK(classify_hyperuniform(fit, 1) == HyperClass::SuperPoissonian);
}

TEST_CASE("sufficient_condition_bound") {
    CHECK(sufficient_condition_bound(1.0, 1, 1.0, 0.1) == doctest::Approx(1e-2));
    // arithmetic exponent: beta = d1/d2 gives eps^{d1 + d1 theta / d2}
    double d1 = 2, d2 = 3, theta = 1.0;
    double beta = d1 / d2;
    CHECK(beta * (d2 + theta) == doctest::Approx(d1 + d1 * theta / d2));
}

TEST_CASE("gaussian statistic variance") {
    AtomicMeasure empty = make_measure({}, 1.0);
    CHECK(gaussian_statistic_variance(empty, 1.0, 1).value == 0.0);

    AtomicMeasure one = make_measure({{1.0, 1.0}}, 4.0);
    VarianceResult v = gaussian_statistic_variance(one, 1.0, 1);
    CHECK(v.value == doctest::Approx(std::exp(-2.0 * kPi)).epsilon(1e-12));

    // certified region too small: reported omissions would dominate
    AtomicMeasure leaky = make_measure({{0.9, 1e-12}}, 1.0);
    leaky.tail_bound = 10.0;
    CHECK_THROWS_WITH_AS(gaussian_statistic_variance(leaky, 1.0, 1),
                         doctest::Contains("certified region too small"), std::runtime_error);
}

TEST_CASE("rigidity_check pass and fail shapes") {
    // measure vanishing near zero: all ratios 0
    AtomicMeasure gap = make_measure({{0.9, 1.0}}, 1.0);
    std::vector<double> eps;
    for (int n = 1; n <= 8; ++n) eps.push_back(std::pow(2.0, -n));
    RigidityReport rep = rigidity_check(gap, eps, 1, 2.0);
    CHECK(rep.pass);
    CHECK(rep.c_hat == 0.0);

    // Poisson-like mass ~ eps: ratios eps^{1-2d-delta} blow up, must fail
    std::vector<std::pair<double, double>> atoms;
    for (int j = 1; j <= 4096; ++j) atoms.push_back({j / 4096.0, 1.0 / 4096.0});
    AtomicMeasure poissonish = make_measure(atoms, 1.0);
    RigidityReport bad = rigidity_check(poissonish, eps, 1, 0.5);
    CHECK(!bad.pass);
}

TEST_CASE("growth sanity: mass(B_R)/R bounded for Gamma_sqrt2") {
    Scheme s = gamma_a_scheme(std::sqrt(2.0), 0.3);
    AtomicMeasure m = centered_diffraction(s, 100.0, 1e-6);
    double i = intensity(s);
    for (double R = 1.0; R <= 100.0; R *= 1.9) {
        CHECK(ball_mass(m, R).mass / R <= 6.0 * i);
    }
    CHECK(ball_mass(m, 100.0).mass / 100.0 >= 0.5 * i);
}

TEST_CASE("fibonacci diffraction decays fast near zero") {
    Scheme fib = fibonacci_scheme();
    AtomicMeasure m = centered_diffraction(fib, 0.5, 1e-14);
    double phi = (1 + std::sqrt(5.0)) / 2;
    std::vector<std::pair<double, double>> pairs;
    for (int n = 2; n <= 8; ++n) {
        double eps = std::pow(phi, -n);
        pairs.emplace_back(eps, ball_mass(m, eps).mass);
    }
    ScalingFit fit = fit_scaling(pairs);
    CHECK(fit.slope >= 3.0);  // well beyond the hyperuniformity threshold 1
}

TEST_CASE("spectral variance is nonnegative across schemes and radii") {
    for (const Scheme& s : {gamma_a_scheme(std::sqrt(2.0), 0.3), fibonacci_scheme()}) {
        for (double R : {0.7, 2.3, 5.0, 13.7}) {
            VarianceResult v = spectral_variance(s, Window::interval(R), 60.0, 2e3, 0);
            CHECK(v.value >= 0.0);
        }
    }
}

TEST_CASE("higher-dimensional scheme: d1=1, d2=2 ball window") {
    Eigen::MatrixXd basis(3, 3);
    basis << 1.0, 0.3, 0.1,
             0.2, 1.1, 0.4,
             0.1, 0.2, 1.3;
    Scheme s(LatticeBasis(1, 2, basis), Window::ball(0.8, 2), "d2=2 test");
    double atom0 = std::norm(ft_indicator(s.window, Eigen::VectorXd::Zero(2))) /
                   (s.lattice.det_abs * s.lattice.det_abs);
    CHECK(std::abs(atom0 - intensity(s) * intensity(s)) <= 1e-10 * atom0);

    AtomicMeasure m = centered_diffraction(s, 3.0, 1e-6);
    CHECK(m.size() >= 2);
    CHECK(std::isfinite(m.tail_bound));
    // negation symmetry of the constructed atoms
    for (std::size_t j = 0; j + 1 < m.size(); j += 2) {
        Eigen::Index a = static_cast<Eigen::Index>(j), b = a + 1;
        CHECK(m.norms[a] == doctest::Approx(m.norms[b]).epsilon(1e-9));
    }
    CHECK(ball_mass(m, 3.0).mass >= ball_mass(m, 1.0).mass);
}

TEST_CASE("streaming and measure-based spectral variance agree on matched truncation") {
    Scheme s = gamma_a_scheme(std::sqrt(2.0), 0.3);
    double E = 40.0, cap = 500.0;
    DiffractionOptions opts;
    opts.xi2_cap = cap;
    AtomicMeasure m = centered_diffraction(s, E, 1e-300, opts);
    for (double R : {2.0, 7.3}) {
        VarianceResult stream = spectral_variance(s, Window::interval(R), E, cap, 0);
        VarianceResult table = spectral_variance(m, Window::interval(R));
        // the streaming value includes its mean-value completion, which is at
        // most twice its reported residual
        CHECK(std::abs(stream.value - table.value) <= 2.0 * stream.truncation_bound + 1e-10);
    }
}

TEST_CASE("real-space Palm route matches the spectral lattice sum") {
    // Var(B_R) = sum_gamma rho_R(gamma_1) vol(W ∩ (W - gamma_2)) / covol - ip^2 (2R)^2
    auto palm_variance = [](const Scheme& s, double R) {
        double covol = s.lattice.det_abs;
        double lo = s.window.center[0] - s.window.half_widths[0];
        double hi = s.window.center[0] + s.window.half_widths[0];
        double sum = 0.0;
        Box b1 = Box::interval(-2 * R, 2 * R);
        Box b2 = Box::interval(-(hi - lo) - 1e-9, (hi - lo) + 1e-9);
        enumerate_in_box(s.lattice, b1, b2, {}, [&](const LatticePoint& p) {
            double overlap = std::min(hi, hi - p.x2[0]) - std::max(lo, lo - p.x2[0]);
            if (overlap <= 0) return;
            double rho = 2 * R - std::abs(p.x1[0]);
            if (rho <= 0) return;
            sum += rho * overlap / covol;
        });
        double ip = intensity(s);
        return sum - ip * ip * 4 * R * R;
    };
    for (const Scheme& s : {fibonacci_scheme(), gamma_a_scheme(std::sqrt(2.0), 0.3)}) {
        for (double R : {5.0, 12.7}) {
            double palm = palm_variance(s, R);
            VarianceResult sp = spectral_variance(s, Window::interval(R), 300.0, 4e4, 200000000);
            CHECK(std::abs(palm - sp.value) <= sp.truncation_bound + 2e-4);
            CHECK(palm >= -1e-9);
        }
    }
}
