#include "qch/nonhyper.hpp"

#include <cmath>
#include <stdexcept>

namespace qch {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<BigInt> q_u_set(const Rational& a, const Rational& u, const BigInt& m_max) {
    if (!(u > Rational(0)) || !(u < Rational(1)))
        throw std::invalid_argument("q_u_set: u must lie in (0,1)");
    return resonant_integers(a, u / Rational(2), m_max);
}

namespace {

// sin(2 pi {x}) evaluated from the exact fractional part.
double sin_two_pi_frac(const Rational& x) {
    Rational f = x.fractional();
    if (f.is_zero() || f == Rational(1, 2)) return 0.0;
    return std::sin(2.0 * kPi * f.to_double());
}

}  // namespace

Rational resonant_b_search(const Rational& a, const BigInt& m_k, long long grid_n) {
    return resonant_b_search_joint(a, {m_k}, grid_n);
}

Rational resonant_b_search_joint(const Rational& a, const std::vector<BigInt>& m_ks,
                                 long long grid_n) {
    if (a.sign() <= 0) throw std::invalid_argument("resonant_b_search: a must be positive");
    if (m_ks.empty() || grid_n < 2) throw std::invalid_argument("resonant_b_search: bad inputs");
    // With b = j/(2 a grid_n), the resonance arguments 2 a b m_k = j m_k / grid_n
    // depend only on m_k mod grid_n: pure modular arithmetic.
    std::vector<long long> residues;
    for (const BigInt& m : m_ks) residues.push_back((m % BigInt(grid_n)).to_int64());

    long long best_j = 1;
    double best_score = -2.0;
    bool maximize_sin = m_ks.size() == 1;  // single level: steer sin toward +1
    for (long long j = 1; j < grid_n; ++j) {
        double score = 2.0;
        for (long long r : residues) {
            long long t = static_cast<long long>((__int128)j * r % grid_n);
            double s = std::sin(2.0 * kPi * static_cast<double>(t) / static_cast<double>(grid_n));
            score = std::min(score, maximize_sin ? s : s * s);
        }
        if (score > best_score) {
            best_score = score;
            best_j = j;
        }
    }
    return Rational(BigInt(best_j), BigInt(1)) / (Rational(2) * a * Rational(grid_n));
}

double lower_bound_Eu(const Rational& a, const Rational& b, const Rational& u,
                      const BigInt& m_max) {
    double sum = 0.0;
    for (const BigInt& m : q_u_set(a, u, m_max)) {
        // sin(4 pi a b m) = sin(2 pi * (2 a b m)); reduce 2 a b m mod 1 exactly
        double s = sin_two_pi_frac(Rational(2) * a * b * Rational(m, BigInt(1)));
        double md = m.to_double();
        sum += 2.0 * 0.5 * (s * s) / (kPi * kPi * md * md);  // m and -m
    }
    return sum;
}

NonHyperCertificate nonhyper_certificate(double gamma, int K, double delta, long long grid_n) {
    if (!(delta > 2.0 / gamma))
        throw std::invalid_argument("outside theorem regime: need delta > 2/gamma");
    NonHyperCertificate cert;
    cert.gamma = gamma;
    cert.delta = delta;
    cert.a = liouville_param(gamma, K);

    std::vector<BigInt> levels(cert.a.m_list.begin(), cert.a.m_list.end() - 1);
    cert.b = resonant_b_search_joint(cert.a.a_truncated, levels, grid_n);

    const Rational& a = cert.a.a_truncated;
    const BigInt& m_top = cert.a.m_list[K - 2];

    // Slack constant for the O(u) window, calibrated on a geometric u-grid.
    // The constant depends on (a, b) only, so a moderate frequency range does.
    BigInt m_cal = m_top < BigInt(10000) ? m_top : BigInt(10000);
    double c_slack = 0.0;
    for (int i = 0; i < 8; ++i) {
        Rational u = Rational(1, 2) / Rational(BigInt::pow(BigInt(4), i), BigInt(1));
        MassResult mr = diffraction_mass_gamma_ab(a, cert.b, u, m_cal);
        double lower = lower_bound_Eu(a, cert.b, u, m_cal);
        c_slack = std::max(c_slack, std::abs(mr.mass - lower) / u.to_double());
    }
    cert.slack_constant = c_slack;

    for (int k = 0; k + 1 < K; ++k) {
        CertificateRow row;
        row.k = k + 1;
        row.u_k = cert.a.u_k(k);
        MassResult mr = diffraction_mass_gamma_ab(a, cert.b, row.u_k, m_top);
        row.mass = mr.mass;
        row.mass_tail = mr.tail_bound;
        row.mass_lower_bound = lower_bound_Eu(a, cert.b, row.u_k, m_top);
        row.ratio = row.mass / std::pow(row.u_k.to_double(), delta);
        cert.rows.push_back(row);
    }

    cert.pass = cert.rows.size() >= 2;
    for (std::size_t i = 0; i + 1 < cert.rows.size(); ++i)
        if (!(cert.rows[i + 1].ratio > cert.rows[i].ratio)) cert.pass = false;
    if (cert.pass && !(cert.rows.back().ratio >= 10.0 * cert.rows.front().ratio))
        cert.pass = false;
    for (auto& row : cert.rows)
        if (row.mass < row.mass_lower_bound - 1e-12) cert.pass = false;
    return cert;
}

}  // namespace qch
