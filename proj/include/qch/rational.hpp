#pragma once

#include <string>

#include "qch/bigint.hpp"

namespace qch {

/// Reduced fraction num/den with den > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "p/q", a plain integer, or a decimal like "0.125" / "-3.5e-2".
    static Rational parse(const std::string& s);
    /// Exact value of a finite double (every double is a dyadic rational).
    static Rational from_double(double v);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational abs() const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    BigInt floor() const;
    BigInt round_nearest() const;  // ties round up
    /// Fractional part in [0,1).
    Rational fractional() const;
    /// Reduction of *this mod m into [0, m); m > 0.
    Rational mod(const Rational& m) const;

    double to_double() const;
    std::string to_string() const;  // "p/q" or "p" when integral

private:
    BigInt num_, den_;
    void reduce();

    struct AlreadyReduced {};
    Rational(BigInt num, BigInt den, AlreadyReduced) : num_(std::move(num)), den_(std::move(den)) {}
};

/// Distance to the nearest integer, exact, in [0, 1/2].
Rational frac_dist(const Rational& theta);

}  // namespace qch
