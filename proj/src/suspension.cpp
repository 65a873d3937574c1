#include "qch/suspension.hpp"

#include <cmath>
#include <stdexcept>

#include "qch/parallel.hpp"
#include "qch/rng.hpp"

namespace qch {

namespace {
constexpr double kPi = 3.14159265358979323846;

double bernoulli2(double t) { return t * t - t + 1.0 / 6.0; }

std::complex<double> unit_exp(double turns) {  // e^{2 pi i turns}
    return std::polar(1.0, 2.0 * kPi * turns);
}

void check_q(const Rational& q) {
    if (!(q > Rational(1, 2)) || !(q <= Rational(3, 4)))
        throw std::invalid_argument("suspension: q must lie in (1/2, 3/4]");
}

}  // namespace

SuspensionParams::SuspensionParams(Rational q_) : q(std::move(q_)) { check_q(q); }

std::complex<double> fourier_coeff_psi(const Rational& q, long long k) {
    if (k == 0) throw std::invalid_argument("fourier_coeff_psi: centered, k = 0 is excluded");
    std::complex<double> inv_2piik = std::complex<double>(0.0, -1.0) / (2.0 * kPi * k);
    std::complex<double> first =
        (k % 2 == 0) ? std::complex<double>(0.0, 0.0)
                     : 2.0 * inv_2piik;  // (1 - (-1)^k) / (2 pi i k)
    Rational f = (q * Rational(k)).fractional();
    std::complex<double> second = (unit_exp(-f.to_double()) - 1.0) * inv_2piik;
    return first + second;
}

double envelope_constant(const Rational& q) {
    // |c_n| <= sqrt(c_0 / 3) 2^{-n}: Cauchy-Schwarz with |psi^(k)| <= 1/(pi k)
    double mb = (Rational(3, 2) - q).to_double();
    double c0 = mb * (1.0 - mb);
    return std::sqrt(c0 / 3.0);
}

Correlation correlation(const Rational& q, int n, long long k_cutoff) {
    check_q(q);
    if (n < 0) throw std::invalid_argument("correlation: n must be nonnegative");
    if (k_cutoff > 0) {
        // literal truncated Fourier sum, kept as the slow reference path
        BigInt p2 = BigInt::pow(BigInt(2), static_cast<unsigned long long>(n));
        Rational p2q = Rational(p2, BigInt(1)) * q;
        std::complex<double> sum = 0.0;
        for (long long k = 1; k <= k_cutoff; ++k) {
            for (long long sk : {k, -k}) {
                // psi^(2^n sk) evaluated with the exact fractional part of 2^n sk q
                long long kk = sk;
                std::complex<double> inv = std::complex<double>(0.0, -1.0) /
                                           (2.0 * kPi * std::ldexp(static_cast<double>(kk), n));
                std::complex<double> first =
                    (n == 0 && (kk % 2 != 0)) ? 2.0 * inv : std::complex<double>(0.0, 0.0);
                Rational f = (p2q * Rational(kk)).fractional();
                std::complex<double> big = first + (unit_exp(-f.to_double()) - 1.0) * inv;
                sum += big * std::conj(fourier_coeff_psi(q, kk));
            }
        }
        double tail = 2.0 / (kPi * kPi * std::ldexp(static_cast<double>(k_cutoff), n));
        return {sum.real(), tail};
    }

    double mb = (Rational(3, 2) - q).to_double();  // measure of B
    if (n == 0) {
        double c0 = mb * (1.0 - mb);
        return {c0, 1e-15};
    }
    // c_n = 2^{-(n+1)} [B2({(1-2^n) q}) - B2({1/2 - 2^n q}) - B2({q}) + B2(1/2)]
    BigInt p2 = BigInt::pow(BigInt(2), static_cast<unsigned long long>(n));
    Rational p2r(p2, BigInt(1));
    double f1 = ((Rational(1) - p2r) * q).fractional().to_double();
    double f2 = (Rational(1, 2) - p2r * q).fractional().to_double();
    double f3 = q.fractional().to_double();
    double bracket = bernoulli2(f1) - bernoulli2(f2) - bernoulli2(f3) + bernoulli2(0.5);
    double value = std::ldexp(bracket, -(n + 1));
    return {value, std::ldexp(1e-14, -n) + 1e-18};
}

CorrelationSeries build_correlation_series(const Rational& q, int N, long long k_cutoff) {
    if (N < 0) throw std::invalid_argument("build_correlation_series: N must be nonnegative");
    CorrelationSeries s;
    s.q = q;
    s.k_cutoff = k_cutoff;
    s.envelope_2n = 0.0;
    for (int n = 0; n <= N; ++n) {
        Correlation c = correlation(q, n, k_cutoff);
        s.c.push_back(c.value);
        s.tail_bound_per_n.push_back(c.tail_bound);
        s.envelope_2n = std::max(s.envelope_2n, std::abs(c.value) * std::ldexp(1.0, n));
    }
    return s;
}

Correlation sigma2(const Rational& q, int N, long long k_cutoff) {
    if (N < 10) throw std::invalid_argument("sigma2: N must be at least 10");
    double sum = correlation(q, 0, k_cutoff).value;
    double slack = 0.0;
    for (int n = 1; n <= N; ++n) {
        Correlation c = correlation(q, n, k_cutoff);
        sum += 2.0 * c.value;
        slack += 2.0 * c.tail_bound;
    }
    double tail = 2.0 * envelope_constant(q) * std::ldexp(1.0, -N) + slack;
    return {sum, tail};
}

Correlation cf_constant(const Rational& q, int N, long long k_cutoff) {
    if (N < 10) throw std::invalid_argument("cf_constant: N must be at least 10");
    double sum = 0.0;
    double slack = 0.0;
    for (int n = 1; n <= N; ++n) {
        Correlation c = correlation(q, n, k_cutoff);
        sum += n * std::abs(c.value);
        slack += n * c.tail_bound;
    }
    // sum_{n>N} n C 2^{-n} = C (N+2) 2^{-N}
    double tail = envelope_constant(q) * (N + 2.0) * std::ldexp(1.0, -N) + slack;
    return {sum, tail};
}

std::vector<ClbRow> clb_bound_check(const Rational& q, const std::vector<double>& R_list,
                                    int N, long long k_cutoff) {
    double R_max = 0.0;
    for (double r : R_list) {
        if (!(r > 0)) throw std::invalid_argument("clb_bound_check: R must be positive");
        R_max = std::max(R_max, r);
    }
    int n_needed = static_cast<int>(std::ceil(2.0 * R_max)) + 1;
    CorrelationSeries series = build_correlation_series(q, std::max(N, n_needed), k_cutoff);
    double s2 = sigma2(q, std::max(N, n_needed), k_cutoff).value;
    double cf = cf_constant(q, std::max(N, n_needed), k_cutoff).value;
    double c0 = series.c[0];

    std::vector<ClbRow> rows;
    for (double R : R_list) {
        double acc = 2.0 * R * c0;  // n = 0 term of sum rho_R(n) c_n
        for (int n = 1; n <= static_cast<int>(std::floor(2.0 * R)); ++n)
            acc += 2.0 * (2.0 * R - n) * series.c[static_cast<std::size_t>(n)];
        double dev = std::abs(acc - 2.0 * R * s2);
        double bound = 12.0 * cf + c0 + 1e-9;
        rows.push_back({R, dev, bound, dev <= bound});
    }
    return rows;
}

ComplexSum coboundary_obstruction(const Rational& q, int N) {
    check_q(q);
    if (N < 10) throw std::invalid_argument("coboundary_obstruction: N must be at least 10");
    // 1/(pi i) + sum_{n=0}^N (e^{-2 pi i 2^n q} - 1) / (2 pi i 2^n)
    std::complex<double> sum = std::complex<double>(0.0, -1.0 / kPi);
    BigInt p2(1);
    for (int n = 0; n <= N; ++n) {
        Rational f = (Rational(p2, BigInt(1)) * q).fractional();
        std::complex<double> inv =
            std::complex<double>(0.0, -1.0) / (2.0 * kPi * std::ldexp(1.0, n));
        sum += (unit_exp(-f.to_double()) - 1.0) * inv;
        p2 = p2 * BigInt(2);
    }
    return {sum, std::ldexp(1.0, -N) / kPi};
}

ComplexSum theta_function(const Rational& q, int N) {
    if (N < 0) throw std::invalid_argument("theta_function: N must be nonnegative");
    std::complex<double> sum = 0.0;
    BigInt p2(1);
    for (int n = 0; n <= N; ++n) {
        Rational f = (Rational(p2, BigInt(1)) * q).fractional();
        sum += unit_exp(-f.to_double()) * std::ldexp(1.0, -n);
        p2 = p2 * BigInt(2);
    }
    return {sum, std::ldexp(1.0, -N)};
}

namespace {

// Deterministic two-sided fair-bit source: bit j of stream (seed, sample).
struct BitSource {
    std::uint64_t seed;
    std::uint64_t stream;

    int bit(long long j) const {
        long long block = j >= 0 ? j / 64 : -((-j + 63) / 64);
        int offset = static_cast<int>(j - block * 64);
        std::uint64_t word =
            CounterRng::mix(seed ^ CounterRng::mix(stream + 0x8e9b5f7d4a0c3b2eull) ^
                            CounterRng::mix(static_cast<std::uint64_t>(block) * 0x9e3779b97f4a7c15ull + 0x1234u));
        return static_cast<int>((word >> offset) & 1u);
    }
};

constexpr int kBasePrecision = 60;
constexpr int kExtraPrecision = 512;

// Binary digits of q in (0,1): q = sum digits[j] 2^{-(j+1)}.
std::vector<int> binary_digits(const Rational& q, int count) {
    std::vector<int> digits;
    BigInt num = q.num(), den = q.den();
    for (int j = 0; j < count; ++j) {
        num = num * BigInt(2);
        if (num >= den) {
            digits.push_back(1);
            num = num - den;
        } else {
            digits.push_back(0);
        }
    }
    return digits;
}

// Certified membership of x_n = 0.b_{n+1} b_{n+2}... in [0,1/2] u (q,1).
template <typename Bits>
bool member(const Bits& bits, long long n, const std::vector<int>& qdigits) {
    int b1 = bits.bit(n + 1);
    if (b1 == 0) return true;  // x < 1/2 (x = 1/2 itself enters via b1 = 1, all zeros)
    // x >= 1/2: in the set iff x == 1/2 exactly or x > q
    int cmp = 0;  // 0 undecided, -1 x < q, +1 x > q
    bool one_seen = false;
    int limit = kBasePrecision + kExtraPrecision;
    for (int j = 2; j <= limit; ++j) {
        int xb = bits.bit(n + j);
        if (xb == 1) one_seen = true;
        if (cmp == 0) {
            int qb = qdigits[static_cast<std::size_t>(j - 1)];
            if (xb != qb) cmp = xb > qb ? 1 : -1;
        }
        if (cmp == 1) return true;              // x > q
        if (cmp == -1 && one_seen) return false;  // 1/2 < x < q
    }
    throw std::runtime_error("simulate_orbit: boundary resolution failed");
}

}  // namespace

namespace {

template <typename Bits>
OrbitSample orbit_from(const Rational& q, const Bits& bits, long long n_min, long long n_max,
                       double t_shift) {
    check_q(q);
    if (n_max < n_min) throw std::invalid_argument("simulate_orbit: empty index range");
    if (!(t_shift >= 0.0) || !(t_shift < 1.0))
        throw std::invalid_argument("simulate_orbit: t_shift must be in [0,1)");
    OrbitSample sample;
    sample.q = q;
    sample.n_min = n_min;
    sample.n_max = n_max;
    sample.t_shift = t_shift;
    std::vector<int> qdigits = binary_digits(q, kBasePrecision + kExtraPrecision + 2);
    for (long long n = n_min; n <= n_max; ++n) {
        bool in = member(bits, n, qdigits);
        sample.member.push_back(in ? 1 : 0);
        if (in) sample.hits.push_back(n);
    }
    sample.two_syndetic = true;
    for (long long n = n_min; n < n_max; ++n)
        if (!sample.in_set(n) && !sample.in_set(n + 1)) sample.two_syndetic = false;
    return sample;
}

struct FnBits {
    const std::function<int(long long)>* fn;
    int bit(long long j) const { return (*fn)(j); }
};

}  // namespace

OrbitSample simulate_orbit(const Rational& q, std::uint64_t seed, long long n_min,
                           long long n_max, double t_shift) {
    return orbit_from(q, BitSource{seed, 0}, n_min, n_max, t_shift);
}

OrbitSample simulate_orbit(const Rational& q, const std::function<int(long long)>& bit,
                           long long n_min, long long n_max, double t_shift) {
    return orbit_from(q, FnBits{&bit}, n_min, n_max, t_shift);
}

VarianceEstimate mc_suspension_variance(const Rational& q, double R, std::size_t n_samples,
                                        std::uint64_t seed) {
    check_q(q);
    if (!(R >= 1.0)) throw std::invalid_argument("mc_suspension_variance: R must be >= 1");
    if (n_samples < 2) throw std::invalid_argument("mc_suspension_variance: need 2+ samples");
    std::vector<int> qdigits = binary_digits(q, kBasePrecision + kExtraPrecision + 2);
    std::vector<double> counts(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        CounterRng rng(seed, i);
        double t = rng.next_double();
        BitSource bits{seed ^ 0xfeedULL, static_cast<std::uint64_t>(i) + 1};
        long long lo = static_cast<long long>(std::ceil(t - R));
        long long hi = static_cast<long long>(std::floor(t + R));
        std::size_t c = 0;
        for (long long n = lo; n <= hi; ++n)
            if (member(bits, n, qdigits)) ++c;
        counts[i] = static_cast<double>(c);
    });
    return variance_of_counts(counts, R, seed);
}

}  // namespace qch
