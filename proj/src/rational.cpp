#include "qch/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace qch {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }
    auto epos = s.find_first_of("eE");
    std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
    long long expo = epos == std::string::npos ? 0 : std::stoll(s.substr(epos + 1));
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
        expo -= static_cast<long long>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    BigInt m(mant.empty() || mant == "-" || mant == "+" ? "0" : mant);
    if (expo >= 0) return Rational(m * BigInt::pow10(static_cast<std::size_t>(expo)), BigInt(1));
    return Rational(m, BigInt::pow10(static_cast<std::size_t>(-expo)));
}

Rational Rational::from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("Rational: non-finite double");
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
    // 53 shifts make the mantissa integral.
    long long mi = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    BigInt num(mi), den(1);
    if (exp >= 0)
        num = num * BigInt::pow(BigInt(2), static_cast<unsigned long long>(exp));
    else
        den = BigInt::pow(BigInt(2), static_cast<unsigned long long>(-exp));
    return Rational(num, den);
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::abs() const {
    Rational r = *this;
    r.num_ = r.num_.abs();
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    // shared-denominator fast path (exact power-of-ten work lives here)
    if (den_ == o.den_) {
        BigInt num = num_ + o.num_;
        BigInt g = BigInt::gcd(num, den_);
        if (g == BigInt(1)) return Rational(std::move(num), den_, AlreadyReduced{});
        return Rational(num / g, den_ / g, AlreadyReduced{});
    }
    BigInt g = BigInt::gcd(den_, o.den_);
    if (g == BigInt(1))
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    BigInt dg = den_ / g, odg = o.den_ / g;
    return Rational(num_ * odg + o.num_ * dg, dg * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    // inputs are reduced: cross-cancel so no large gcd is ever needed
    BigInt g1 = BigInt::gcd(num_, o.den_);
    BigInt g2 = BigInt::gcd(o.num_, den_);
    BigInt num = (num_ / g1) * (o.num_ / g2);
    BigInt den = (den_ / g2) * (o.den_ / g1);
    return Rational(std::move(num), std::move(den), AlreadyReduced{});
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    BigInt g1 = BigInt::gcd(num_, o.num_);
    BigInt g2 = BigInt::gcd(o.den_, den_);
    BigInt num = (num_ / g1) * (o.den_ / g2);
    BigInt den = (den_ / g2) * (o.num_ / g1);
    if (den.is_negative()) {
        den = -den;
        num = -num;
    }
    return Rational(std::move(num), std::move(den), AlreadyReduced{});
}

bool Rational::operator<(const Rational& o) const {
    return num_ * o.den_ < o.num_ * den_;
}

BigInt Rational::floor() const {
    BigInt q, r;
    BigInt::divmod(num_.abs(), den_, q, r);
    if (!num_.is_negative()) return q;
    return r.is_zero() ? -q : -q - BigInt(1);
}

BigInt Rational::round_nearest() const {
    // floor(x + 1/2); ties round up, which is "away from zero" for x >= 0
    // and toward zero for x < 0 -- either way within 1/2, which is all we need.
    Rational shifted = *this + Rational(1, 2);
    return shifted.floor();
}

Rational Rational::fractional() const {
    // num mod den keeps gcd(num, den) = 1, so no re-reduction is needed
    BigInt q, r;
    BigInt::divmod(num_.abs(), den_, q, r);
    if (num_.is_negative() && !r.is_zero()) r = den_ - r;
    if (r.is_zero()) return Rational(0);
    return Rational(std::move(r), den_, AlreadyReduced{});
}

Rational Rational::mod(const Rational& m) const {
    if (m.sign() <= 0) throw std::domain_error("Rational::mod: modulus must be positive");
    Rational q = *this / m;
    return *this - m * Rational(q.floor(), BigInt(1));
}

double Rational::to_double() const {
    if (num_.is_zero()) return 0.0;
    // Scale so the integer division keeps ~28 significant digits.
    long long shift = static_cast<long long>(den_.decimal_digits()) + 28 -
                      static_cast<long long>(num_.decimal_digits());
    if (shift < 0) shift = 0;
    BigInt scaled = num_.abs() * BigInt::pow10(static_cast<std::size_t>(shift));
    BigInt q, r;
    BigInt::divmod(scaled, den_, q, r);
    double v = q.to_double() * std::pow(10.0, -static_cast<double>(shift));
    return num_.is_negative() ? -v : v;
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational frac_dist(const Rational& theta) {
    Rational f = theta.fractional();  // in [0,1)
    Rational c = Rational(1) - f;
    return f <= c ? f : c;
}

}  // namespace qch
