#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qch/nonhyper.hpp"
#include "qch/rng.hpp"

using namespace qch;

namespace {
constexpr double kPi = 3.14159265358979323846;

double sin_4pi_abm(const Rational& a, const Rational& b, const BigInt& m) {
    Rational f = (Rational(2) * a * b * Rational(m, BigInt(1))).fractional();
    return std::sin(2.0 * kPi * f.to_double());
}
}  // namespace

TEST_CASE("q_u_set on a rational slope lists multiples of the denominator") {
    auto q = q_u_set(Rational(1, 3), Rational(1, 10), BigInt(10));
    REQUIRE(q.size() == 3);
    CHECK(q[0] == BigInt(3));
    CHECK(q[1] == BigInt(6));
    CHECK(q[2] == BigInt(9));
}

TEST_CASE("q_u_set membership is decided by exact arithmetic at the boundary") {
    LiouvilleParam lp = liouville_param(3.0, 3);
    const Rational& a = lp.a_truncated;
    // {10 a} = 10^-3 + 10^-15 exactly, a hair above u/2 = 10^-3
    auto at_u = q_u_set(a, Rational(BigInt(2), BigInt::pow10(3)), BigInt(10));
    CHECK(at_u.empty());
    // widening u by the exact hair admits m = 10
    Rational u_wide = (Rational(BigInt(1), BigInt::pow10(3)) +
                       Rational(BigInt(1), BigInt::pow10(15))) *
                      Rational(2);
    auto wide = q_u_set(a, u_wide, BigInt(10));
    REQUIRE(wide.size() == 1);
    CHECK(wide[0] == BigInt(10));
    // the K-1 level sits exactly on the boundary and is included
    auto top = q_u_set(a, lp.u_k(1), lp.m_list[1]);
    CHECK(std::find(top.begin(), top.end(), lp.m_list[1]) != top.end());

    // u below every resonance: empty
    CHECK(q_u_set(a, Rational(BigInt(1), BigInt::pow10(40)), BigInt(100)).empty());
}

TEST_CASE("resonant_b_search hits an exact quarter period when the grid allows") {
    Rational a(3, 2);
    BigInt m(2);  // a m = 3 integral
    Rational b = resonant_b_search(a, m, 10000);
    CHECK(b > Rational(0));
    CHECK(b < Rational(1) / (Rational(2) * a));
    Rational arg = (Rational(2) * a * b * Rational(m, BigInt(1))).fractional();
    CHECK(arg == Rational(1, 4));
    CHECK(sin_4pi_abm(a, b, m) == 1.0);
}

TEST_CASE("resonant_b_search on the Liouville parameter reaches 0.99") {
    LiouvilleParam lp = liouville_param(3.0, 3);
    Rational b = resonant_b_search(lp.a_truncated, lp.m_list[1], 10007);
    double s = sin_4pi_abm(lp.a_truncated, b, lp.m_list[1]);
    CHECK(s * s >= 0.99);
    // joint search over both computed levels
    Rational bj = resonant_b_search_joint(lp.a_truncated, {lp.m_list[0], lp.m_list[1]}, 10007);
    double s0 = sin_4pi_abm(lp.a_truncated, bj, lp.m_list[0]);
    double s1 = sin_4pi_abm(lp.a_truncated, bj, lp.m_list[1]);
    CHECK(s0 * s0 >= 0.95);
    CHECK(s1 * s1 >= 0.95);
}

TEST_CASE("lower_bound_Eu closed cases") {
    LiouvilleParam lp = liouville_param(3.0, 3);
    // empty Q_u
    CHECK(lower_bound_Eu(lp.a_truncated, Rational(1, 7), Rational(BigInt(1), BigInt::pow10(40)),
                         BigInt(100)) == 0.0);

    // single resonant pair +-10 with sin^2 = 1: 2 * (1/2) / (10 pi)^2
    Rational a2 = Rational(1, 10) + Rational(BigInt(1), BigInt::pow10(4));
    Rational u(22, 10000);  // u/2 = 11/10000 >= {10 a} = 1/1000
    Rational b = resonant_b_search(a2, BigInt(10), 10000);
    double lb = lower_bound_Eu(a2, b, u, BigInt(50));
    double s = sin_4pi_abm(a2, b, BigInt(10));
    CHECK(lb == doctest::Approx(s * s / (100.0 * kPi * kPi)).epsilon(1e-12));
    CHECK(lb == doctest::Approx(1.0132e-3).epsilon(0.05));
}

TEST_CASE("lower bound sits below the exact mass plus O(u) slack") {
    CounterRng rng(41, 0);
    for (int iter = 0; iter < 20; ++iter) {
        double a = 0.4 + 1.2 * rng.next_double();
        double b = 0.05 + (0.9 / (2 * a) - 0.05) * rng.next_double();
        double u = 0.02 + 0.3 * rng.next_double();
        Rational ar = Rational::from_double(a), br = Rational::from_double(b),
                 ur = Rational::from_double(u);
        double mass = diffraction_mass_gamma_ab(ar, br, ur, BigInt(400)).mass;
        double lower = lower_bound_Eu(ar, br, ur, BigInt(400));
        CHECK(lower <= mass + 20.0 * u);
    }
}

TEST_CASE("nonhyper certificate gamma=4") {
    NonHyperCertificate cert = nonhyper_certificate(4.0, 3, 0.6);
    CHECK(cert.pass);
    REQUIRE(cert.rows.size() == 2);
    CHECK(cert.rows[0].u_k == Rational(BigInt(2), BigInt::pow10(4)));
    CHECK(cert.rows[1].u_k == Rational(BigInt(2), BigInt::pow10(20)));
    CHECK(cert.rows[1].ratio >= 10.0 * cert.rows[0].ratio);
    for (auto& row : cert.rows) CHECK(row.mass >= row.mass_lower_bound - 1e-12);

    // growth law: the two-row slope of log ratio against log m_k is within
    // 25% of delta*gamma - 2
    double slope = std::log(cert.rows[1].ratio / cert.rows[0].ratio) /
                   std::log(1e5 / 1e1);
    CHECK(slope == doctest::Approx(0.4).epsilon(0.25));
}

TEST_CASE("nonhyper certificate regime errors") {
    CHECK_THROWS_WITH_AS(nonhyper_certificate(4.0, 3, 0.4),
                         doctest::Contains("outside theorem regime"), std::invalid_argument);
}

TEST_CASE("nonhyper certificate gamma=8 uses the sparse resonance search") {
    NonHyperCertificate cert = nonhyper_certificate(8.0, 3, 0.3);
    CHECK(cert.pass);
    REQUIRE(cert.rows.size() == 2);
    // m_2 = 10^9: the exact mass row enumerates resonances, not a dense scan
    CHECK(cert.a.levels == std::vector<long long>{1, 9, 81});
    double slope = std::log(cert.rows[1].ratio / cert.rows[0].ratio) / std::log(1e9 / 1e1);
    CHECK(slope == doctest::Approx(8.0 * 0.3 - 2.0).epsilon(0.25));
}
