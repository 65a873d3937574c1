#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qch/parallel.hpp"
#include "qch/pointset.hpp"
#include "qch/suspension.hpp"
#include "qch/rng.hpp"

using namespace qch;

TEST_CASE("sample_torus is deterministic and uniform") {
    Scheme fib = fibonacci_scheme();
    TorusPoint t1 = sample_torus(fib, 42, 7);
    TorusPoint t2 = sample_torus(fib, 42, 7);
    CHECK(t1.coeffs == t2.coeffs);
    CHECK((fib.lattice.basis * t1.coeffs - (Eigen::VectorXd(2) << t1.g, t1.h).finished())
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    // chi^2 uniformity of the first coefficient, 20 bins, dof 19, p = 0.001
    const int n = 10000, bins = 20;
    std::vector<int> hist(bins, 0);
    double mean_g = 0.0;
    for (int i = 0; i < n; ++i) {
        TorusPoint t = sample_torus(fib, 9, static_cast<std::uint64_t>(i));
        CHECK(t.coeffs.minCoeff() >= 0.0);
        CHECK(t.coeffs.maxCoeff() < 1.0);
        hist[static_cast<int>(t.coeffs[0] * bins)]++;
        mean_g += t.g[0];
    }
    double chi2 = 0.0;
    double expect = static_cast<double>(n) / bins;
    for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
    CHECK(chi2 < 43.82);  // critical value at p = 0.001

    // centroid of g: basis * (1/2, 1/2), sampling error ~ 3 sigma
    mean_g /= n;
    double centroid = (fib.lattice.basis * Eigen::Vector2d(0.5, 0.5))(0);
    double sd = std::sqrt((fib.lattice.basis.row(0).array().square().sum() / 12.0) / n);
    CHECK(std::abs(mean_g - centroid) < 3.5 * sd);
}

TEST_CASE("realize_pointset on the integer scheme") {
    Scheme z = z2_scheme(0.5);
    TorusPoint origin;
    origin.coeffs = Eigen::VectorXd::Zero(2);
    origin.g = Eigen::VectorXd::Zero(1);
    origin.h = Eigen::VectorXd::Zero(1);
    PointSample s = realize_pointset(z, origin, Box::interval(-3, 3));
    CHECK(s.points.size() == 7);  // {-3..3}
}

TEST_CASE("fibonacci realization: density and two-gap structure") {
    Scheme fib = fibonacci_scheme();
    double expected = 100.0 * intensity(fib);
    for (std::uint64_t i = 0; i < 20; ++i) {
        TorusPoint omega = sample_torus(fib, 3, i);
        PointSample s = realize_pointset(fib, omega, Box::interval(0, 100));
        CHECK(std::abs(static_cast<double>(s.points.size()) - expected) <= 3.0);
    }

    // gaps take exactly the two tile values 1 and phi
    TorusPoint omega = sample_torus(fib, 3, 0);
    PointSample s = realize_pointset(fib, omega, Box::interval(0, 200));
    std::vector<double> xs;
    for (auto& p : s.points) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
    double phi = (1 + std::sqrt(5.0)) / 2;
    int short_tiles = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double gap = xs[i] - xs[i - 1];
        bool short_tile = std::abs(gap - 1.0) < 1e-9;
        bool long_tile = std::abs(gap - phi) < 1e-9;
        if (short_tile) ++short_tiles;
        CHECK((short_tile || long_tile));
    }
    // short-tile frequency 2 - phi of all tiles
    CHECK(static_cast<double>(short_tiles) / static_cast<double>(xs.size() - 1) ==
          doctest::Approx(2.0 - phi).epsilon(0.05));
    MeyerReport rep = meyer_checks(s, 2.0);
    CHECK(rep.min_gap == doctest::Approx(1.0));  // the short tile
}

TEST_CASE("shrunk window gives the empty sample") {
    Scheme tiny(fibonacci_scheme().lattice, Window::interval(1e-12), "tiny");
    TorusPoint omega = sample_torus(tiny, 11, 0);
    CHECK(realize_pointset(tiny, omega, Box::interval(-10, 10)).points.empty());
}

TEST_CASE("equivariance under physical shifts") {
    Scheme fib = fibonacci_scheme();
    CounterRng rng(31, 0);
    for (int iter = 0; iter < 10; ++iter) {
        TorusPoint omega = sample_torus(fib, 5, static_cast<std::uint64_t>(iter));
        double shift = 4.0 * rng.next_double() - 2.0;
        TorusPoint shifted = omega;
        shifted.g[0] += shift;
        PointSample a = realize_pointset(fib, shifted, Box::interval(-20, 20));
        PointSample b =
            realize_pointset(fib, omega, Box::interval(-20 - shift, 20 - shift));
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i)
            CHECK(a.points[i][0] == doctest::Approx(b.points[i][0] + shift).epsilon(1e-10));
    }
}

TEST_CASE("mc variance against the exact shifted-integer law") {
    Scheme z = z2_scheme(0.5);
    double R = 2.3;
    VarianceEstimate est = mc_number_variance(z, R, 20000, 77);
    double f = 2 * R - std::floor(2 * R);
    double exact = f * (1 - f);
    CHECK(std::abs(est.variance - exact) <= 3.0 * est.stderr_variance);
    CHECK(est.mean_count == doctest::Approx(2 * R).epsilon(0.02));

    // determinism: bit-identical reruns
    VarianceEstimate again = mc_number_variance(z, R, 20000, 77);
    CHECK(est.variance == again.variance);
    CHECK(est.mean_count == again.mean_count);
    CHECK(est.stderr_variance == again.stderr_variance);
}

TEST_CASE("poisson sampler: mean, variance, independence") {
    Box region = Box::interval(-5, 5);
    const int n = 10000;
    double lambda = 10.0;
    std::vector<double> counts, left, right;
    for (int i = 0; i < n; ++i) {
        PointSample s = poisson_sampler(1.0, region, 123, static_cast<std::uint64_t>(i));
        counts.push_back(static_cast<double>(s.points.size()));
        int l = 0, r = 0;
        for (auto& x : s.points) (x[0] < 0 ? l : r)++;
        left.push_back(l);
        right.push_back(r);
    }
    VarianceEstimate est = variance_of_counts(counts, 5.0, 123);
    CHECK(std::abs(est.mean_count - lambda) < 3.0 * std::sqrt(lambda / n));
    CHECK(std::abs(est.variance - lambda) < 3.5 * est.stderr_variance);

    // disjoint boxes: correlation within 3/sqrt(n)
    double ml = 0, mr = 0;
    for (int i = 0; i < n; ++i) {
        ml += left[static_cast<std::size_t>(i)];
        mr += right[static_cast<std::size_t>(i)];
    }
    ml /= n;
    mr /= n;
    double c = 0, vl = 0, vr = 0;
    for (int i = 0; i < n; ++i) {
        double dl = left[static_cast<std::size_t>(i)] - ml;
        double dr = right[static_cast<std::size_t>(i)] - mr;
        c += dl * dr;
        vl += dl * dl;
        vr += dr * dr;
    }
    CHECK(std::abs(c / std::sqrt(vl * vr)) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("poisson baseline through the anv normalization") {
    // variance over volume stays near 1 across R
    for (double R : {2.0, 5.0}) {
        Box region = Box::interval(-R, R);
        std::vector<double> counts;
        for (int i = 0; i < 20000; ++i)
            counts.push_back(static_cast<double>(
                poisson_sampler(1.0, region, 55, static_cast<std::uint64_t>(i)).points.size()));
        VarianceEstimate est = variance_of_counts(counts, R, 55);
        CHECK(est.variance / (2 * R) == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("fibonacci anv curve decays") {
    Scheme fib = fibonacci_scheme();
    std::vector<AnvPoint> curve = mc_anv_curve(fib, {2.0, 40.0}, 4000, 99);
    REQUIRE(curve.size() == 2);
    CHECK(curve[1].variance_over_vol + 3.0 * curve[1].stderr_over_vol <
          curve[0].variance_over_vol - 3.0 * curve[0].stderr_over_vol);
}

TEST_CASE("meyer checks on the integer lattice") {
    Scheme z = z2_scheme(0.5);
    TorusPoint omega = sample_torus(z, 1, 0);
    PointSample s = realize_pointset(z, omega, Box::interval(-30, 30));
    MeyerReport rep = meyer_checks(s, 1.0);
    CHECK(rep.min_gap == doctest::Approx(1.0));
    CHECK(rep.covering_radius == doctest::Approx(0.5));
    REQUIRE(rep.two_syndetic_in_z.has_value());
    CHECK(*rep.two_syndetic_in_z);  // Z itself: translates trivially cover
}

TEST_CASE("suspension orbits are 2-syndetic through the meyer report") {
    OrbitSample orbit = simulate_orbit(Rational(3, 4), 21, -200, 200);
    PointSample p;
    p.region = Box::interval(-200, 200);
    p.scheme_label = "suspension orbit";
    for (long long n : orbit.hits)
        p.points.push_back(Eigen::VectorXd::Constant(1, static_cast<double>(n) - 0.25));
    MeyerReport rep = meyer_checks(p, 5.0);
    REQUIRE(rep.two_syndetic_in_z.has_value());
    CHECK(*rep.two_syndetic_in_z);
}

TEST_CASE("empirical intensity matches the scheme intensity") {
    for (const Scheme& s : {gamma_a_scheme(std::sqrt(2.0), 0.3), fibonacci_scheme(),
                            quadratic_scheme(2, 0.3)}) {
        double R = 12.0;
        VarianceEstimate est = mc_number_variance(s, R, 5000, 13);
        double expect = intensity(s) * 2.0 * R;
        // count means concentrate fast; 4 sigma of the count spread
        double sd = std::sqrt(est.variance / 5000.0);
        CHECK(std::abs(est.mean_count - expect) <= 4.0 * sd + 1e-9);
    }
}

TEST_CASE("mc results are identical across thread caps") {
    Scheme fib = fibonacci_scheme();
    set_thread_cap(1);
    VarianceEstimate serial = mc_number_variance(fib, 6.0, 4000, 5);
    set_thread_cap(4);
    VarianceEstimate parallel = mc_number_variance(fib, 6.0, 4000, 5);
    set_thread_cap(0);
    CHECK(serial.variance == parallel.variance);
    CHECK(serial.mean_count == parallel.mean_count);
}

TEST_CASE("planar physical space: counts in euclidean disks") {
    Eigen::MatrixXd basis(3, 3);
    basis << 1.0, 0.0, 0.37,
             0.0, 1.0, 0.61,
             0.2, 0.3, 2.10;
    Scheme s(LatticeBasis(2, 1, basis), Window::interval(0.9), "d1=2 test");
    double R = 6.0;
    VarianceEstimate est = mc_number_variance(s, R, 2000, 17);
    double expect = intensity(s) * unit_ball_volume(2) * R * R;
    double sd = std::sqrt(est.variance / 2000.0);
    CHECK(std::abs(est.mean_count - expect) <= 5.0 * sd + 0.05 * expect);

    TorusPoint omega = sample_torus(s, 17, 3);
    PointSample ps = realize_pointset(s, omega, Box::centered(Eigen::Vector2d(R, R)));
    MeyerReport rep = meyer_checks(ps, 1.0);
    CHECK(rep.min_gap > 0.0);
    CHECK(rep.covering_radius > 0.0);
    CHECK(std::isfinite(rep.covering_radius));
}

TEST_CASE("meyer default margin iterates the covering radius") {
    Scheme z = z2_scheme(0.5);
    TorusPoint omega = sample_torus(z, 1, 0);
    PointSample s = realize_pointset(z, omega, Box::interval(-30, 30));
    MeyerReport rep = meyer_checks(s);
    CHECK(rep.min_gap == doctest::Approx(1.0));
    CHECK(rep.covering_radius == doctest::Approx(0.5));
}
