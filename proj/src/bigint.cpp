#include "qch/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qch {

namespace {
std::size_t g_digit_cap = 1000000;
}

std::size_t bigint_digit_cap() { return g_digit_cap; }
void set_bigint_digit_cap(std::size_t cap) { g_digit_cap = cap; }

BigInt::BigInt(long long v) {
    negative_ = v < 0;
    unsigned long long u = negative_ ? -static_cast<unsigned long long>(v)
                                     : static_cast<unsigned long long>(v);
    while (u) {
        limbs_.push_back(static_cast<std::uint32_t>(u % kBase));
        u /= kBase;
    }
}

BigInt::BigInt(const std::string& decimal) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < decimal.size() && (decimal[pos] == '+' || decimal[pos] == '-')) {
        neg = decimal[pos] == '-';
        ++pos;
    }
    if (pos == decimal.size())
        throw std::invalid_argument("BigInt: empty decimal string");
    if (decimal.size() - pos > g_digit_cap)
        throw std::length_error("BigInt: digit cap exceeded");
    for (std::size_t i = pos; i < decimal.size(); ++i)
        if (decimal[i] < '0' || decimal[i] > '9')
            throw std::invalid_argument("BigInt: bad digit in '" + decimal + "'");
    std::size_t n = decimal.size();
    for (std::size_t end = n; end > pos;) {
        std::size_t begin = end >= pos + kBaseDigits ? end - kBaseDigits : pos;
        limbs_.push_back(
            static_cast<std::uint32_t>(std::stoul(decimal.substr(begin, end - begin))));
        end = begin;
    }
    trim();
    negative_ = neg && !is_zero();
}

BigInt BigInt::pow10(std::size_t exponent) {
    if (exponent + 1 > g_digit_cap)
        throw std::length_error("BigInt: digit cap exceeded");
    BigInt r;
    r.limbs_.assign(exponent / kBaseDigits, 0u);
    std::uint32_t head = 1;
    for (std::size_t i = 0; i < exponent % kBaseDigits; ++i) head *= 10;
    r.limbs_.push_back(head);
    return r;
}

BigInt BigInt::pow(const BigInt& base, unsigned long long exponent) {
    BigInt r(1), b = base;
    while (exponent) {
        if (exponent & 1ull) r = r * b;
        b = b * b;
        exponent >>= 1;
    }
    return r;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a,
                    const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

int BigInt::compare_abs(const BigInt& a, const BigInt& b) {
    return cmp_mag(a.limbs_, b.limbs_);
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(std::max(a.size(), b.size()) + 1, 0u);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r[i] = static_cast<std::uint32_t>(s % kBase);
        carry = s / kBase;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Requires |a| >= |b|.
std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(r[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        if (s < 0) {
            s += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.negative_ = !r.negative_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.negative_ = false;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    if (negative_ == o.negative_) {
        r.limbs_ = add_mag(limbs_, o.limbs_);
        r.negative_ = negative_;
    } else {
        int c = cmp_mag(limbs_, o.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.limbs_ = sub_mag(limbs_, o.limbs_);
            r.negative_ = negative_;
        } else {
            r.limbs_ = sub_mag(o.limbs_, limbs_);
            r.negative_ = o.negative_;
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (is_zero() || o.is_zero()) return BigInt();
    if ((limbs_.size() + o.limbs_.size()) * kBaseDigits > g_digit_cap + 2 * kBaseDigits)
        throw std::length_error("BigInt: digit cap exceeded");
    std::vector<std::uint64_t> acc(limbs_.size() + o.limbs_.size(), 0ull);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t cur = acc[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
            acc[i + j] = cur % kBase;
            carry = cur / kBase;
        }
        std::size_t k = i + o.limbs_.size();
        while (carry) {
            std::uint64_t cur = acc[k] + carry;
            acc[k] = cur % kBase;
            carry = cur / kBase;
            ++k;
        }
    }
    BigInt r;
    r.limbs_.assign(acc.begin(), acc.end());
    r.negative_ = negative_ != o.negative_;
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& n, const BigInt& d, BigInt& q, BigInt& r) {
    if (d.is_zero()) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(n.limbs_, d.limbs_);
    if (c < 0) {
        q = BigInt();
        r = n;
        return;
    }

    // Single-limb divisor: one linear pass.
    if (d.limbs_.size() == 1) {
        std::uint64_t dv = d.limbs_[0];
        std::vector<std::uint32_t> qlimbs(n.limbs_.size(), 0u);
        std::uint64_t rem = 0;
        for (std::size_t i = n.limbs_.size(); i-- > 0;) {
            std::uint64_t cur = rem * kBase + n.limbs_[i];
            qlimbs[i] = static_cast<std::uint32_t>(cur / dv);
            rem = cur % dv;
        }
        q.limbs_ = std::move(qlimbs);
        q.negative_ = n.negative_ != d.negative_;
        q.trim();
        r = BigInt(static_cast<long long>(rem));
        r.negative_ = n.negative_ && !r.is_zero();
        return;
    }

    // Knuth-style long division: scale so the divisor's top limb is large,
    // then estimate each quotient limb from the top two remainder limbs.
    std::uint32_t scale = static_cast<std::uint32_t>(kBase / (d.limbs_.back() + 1ull));
    std::vector<std::uint32_t> A, B;
    auto scale_mag = [](const std::vector<std::uint32_t>& src, std::uint32_t f,
                        std::vector<std::uint32_t>& dst) {
        dst.assign(src.size() + 1, 0u);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < src.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(src[i]) * f + carry;
            dst[i] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        dst[src.size()] = static_cast<std::uint32_t>(carry);
        while (!dst.empty() && dst.back() == 0) dst.pop_back();
    };
    scale_mag(n.limbs_, scale, A);
    scale_mag(d.limbs_, scale, B);
    const std::size_t m = B.size();
    const std::uint64_t btop = B[m - 1];
    A.push_back(0u);  // room for the leading window limb

    std::vector<std::uint32_t> qlimbs(A.size() - m, 0u);
    for (std::size_t j = qlimbs.size(); j-- > 0;) {
        std::uint64_t top2 = static_cast<std::uint64_t>(A[j + m]) * kBase + A[j + m - 1];
        std::uint64_t qhat = std::min<std::uint64_t>(top2 / btop, kBase - 1);
        // subtract qhat * B from the window A[j .. j+m]
        auto sub_mul = [&](std::uint64_t qh) -> bool {
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < m; ++i) {
                std::uint64_t prod = qh * B[i] + carry;
                carry = prod / kBase;
                std::int64_t cur = static_cast<std::int64_t>(A[j + i]) - borrow -
                                   static_cast<std::int64_t>(prod % kBase);
                if (cur < 0) {
                    cur += kBase;
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                A[j + i] = static_cast<std::uint32_t>(cur);
            }
            std::int64_t cur = static_cast<std::int64_t>(A[j + m]) - borrow -
                               static_cast<std::int64_t>(carry);
            if (cur < 0) {
                A[j + m] = static_cast<std::uint32_t>(cur + kBase);
                return false;  // went negative: qhat was one (or two) too large
            }
            A[j + m] = static_cast<std::uint32_t>(cur);
            return true;
        };
        // returns true when the carry rolls the window back to nonnegative
        auto add_back = [&]() -> bool {
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < m; ++i) {
                std::uint64_t cur = static_cast<std::uint64_t>(A[j + i]) + B[i] + carry;
                A[j + i] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
            }
            std::uint64_t cur = A[j + m] + carry;
            A[j + m] = static_cast<std::uint32_t>(cur % kBase);
            return cur >= kBase;
        };
        // the 2-limb estimate overshoots by at most 2; the deficit is one
        // base^{m+1} unit, so add B back until the carry rolls over
        bool negative = qhat > 0 && !sub_mul(qhat);
        while (negative) {
            --qhat;
            negative = !add_back();
        }
        qlimbs[j] = static_cast<std::uint32_t>(qhat);
    }

    q.limbs_ = std::move(qlimbs);
    q.negative_ = n.negative_ != d.negative_;
    q.trim();

    // remainder = A / scale
    std::vector<std::uint32_t> rem(A.begin(), A.end());
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    BigInt rr;
    rr.limbs_ = std::move(rem);
    BigInt qq2, rr2;
    if (scale == 1) {
        r = rr;
    } else {
        divmod(rr, BigInt(static_cast<long long>(scale)), qq2, rr2);
        r = qq2;
    }
    r.negative_ = n.negative_ && !r.is_zero();
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    BigInt n = abs();
    divmod(n, o.abs(), q, r);
    q.negative_ = (negative_ != o.negative_) && !q.is_zero();
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(abs(), o.abs(), q, r);
    r.negative_ = negative_ && !r.is_zero();
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return a;
}

bool BigInt::operator==(const BigInt& o) const {
    return negative_ == o.negative_ && limbs_ == o.limbs_;
}

bool BigInt::operator<(const BigInt& o) const {
    if (negative_ != o.negative_) return negative_;
    int c = cmp_mag(limbs_, o.limbs_);
    return negative_ ? c > 0 : c < 0;
}

std::size_t BigInt::decimal_digits() const {
    if (is_zero()) return 1;
    std::size_t d = (limbs_.size() - 1) * kBaseDigits;
    std::uint32_t top = limbs_.back();
    while (top) {
        ++d;
        top /= 10;
    }
    return d;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::string s = negative_ ? "-" : "";
    s += std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        s += std::string(kBaseDigits - part.size(), '0') + part;
    }
    return s;
}

double BigInt::to_double() const {
    double v = 0.0;
    // Only the top few limbs matter for a double; the rest scale the exponent.
    std::size_t n = limbs_.size();
    std::size_t take = std::min<std::size_t>(n, 4);
    for (std::size_t i = n; i-- > n - take;) v = v * kBase + limbs_[i];
    v *= std::pow(static_cast<double>(kBase), static_cast<double>(n - take));
    return negative_ ? -v : v;
}

bool BigInt::fits_int64() const {
    static const BigInt kMax(std::numeric_limits<long long>::max());
    static const BigInt kMin(std::numeric_limits<long long>::min());
    return *this <= kMax && kMin <= *this;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
    long long v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
    return negative_ ? -v : v;
}

}  // namespace qch
