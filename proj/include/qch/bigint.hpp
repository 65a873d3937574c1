#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qch {

/// Sign-magnitude arbitrary-precision integer over base-1e9 limbs.
/// Sized for diophantine work with denominators up to the configured
/// decimal-digit cap (see digit_cap()); schoolbook arithmetic throughout.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    explicit BigInt(const std::string& decimal);

    static BigInt pow10(std::size_t exponent);
    static BigInt pow(const BigInt& base, unsigned long long exponent);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt operator/(const BigInt& o) const;  // truncated toward zero
    BigInt operator%(const BigInt& o) const;  // sign follows dividend

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// Quotient and remainder with 0 <= r < |d| when n >= 0 (truncated division).
    static void divmod(const BigInt& n, const BigInt& d, BigInt& q, BigInt& r);

    static BigInt gcd(BigInt a, BigInt b);

    bool operator==(const BigInt& o) const;
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator<=(const BigInt& o) const { return !(o < *this); }
    bool operator>=(const BigInt& o) const { return !(*this < o); }

    /// -1, 0, +1 comparison of magnitudes.
    static int compare_abs(const BigInt& a, const BigInt& b);

    std::size_t decimal_digits() const;
    std::string to_string() const;
    double to_double() const;
    bool fits_int64() const;
    long long to_int64() const;  // throws if out of range

private:
    // limbs_[0] is least significant; no leading zero limbs; zero == empty.
    std::vector<std::uint32_t> limbs_;
    bool negative_ = false;

    static constexpr std::uint32_t kBase = 1000000000u;
    static constexpr int kBaseDigits = 9;

    void trim();
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static int cmp_mag(const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b);
};

/// Global cap on decimal digits of any constructed bignum (default 1e6).
/// Constructors that would exceed it throw std::length_error.
std::size_t bigint_digit_cap();
void set_bigint_digit_cap(std::size_t cap);

}  // namespace qch
