#pragma once

// Exact dyadic rationals m * 2^-e and closed intervals with dyadic endpoints.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "uct/errors.hpp"

namespace uct {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline bool is_power_of_two(const BigInt& v) {
    return v > 0 && (v & (v - 1)) == 0;
}

// floor(num / den) for den > 0; cpp_int division truncates toward zero.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den;
    if (num < 0 && q * den != num) {
        --q;
    }
    return q;
}

inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den;
    if (num > 0 && q * den != num) {
        ++q;
    }
    return q;
}

inline BigInt parse_unsigned(std::string_view text, std::string_view whole) {
    if (text.empty()) {
        throw InvalidNumber("malformed number '" + std::string(whole) + "'");
    }
    BigInt v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw InvalidNumber("malformed number '" + std::string(whole) + "'");
        }
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace detail

/// Exact binary rational mantissa * 2^-exponent in canonical form: the
/// exponent is zero or the mantissa is odd.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long long value) : mantissa_(value) {}  // NOLINT: implicit from integers is intended
    Dyadic(BigInt mantissa, std::size_t exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
        normalize();
    }

    /// 2^-k.
    static Dyadic pow2_neg(std::size_t k) { return Dyadic(BigInt(1), k); }

    const BigInt& mantissa() const noexcept { return mantissa_; }
    std::size_t exponent() const noexcept { return exponent_; }

    bool is_zero() const { return mantissa_ == 0; }
    int sign() const { return mantissa_.sign(); }

    /// Multiply by 2^shift (shift may be negative).
    Dyadic ldexp(long long shift) const {
        if (shift >= 0) {
            auto s = static_cast<std::size_t>(shift);
            if (s <= exponent_) {
                return Dyadic(mantissa_, exponent_ - s);
            }
            return Dyadic(BigInt(mantissa_ << (s - exponent_)), 0);
        }
        return Dyadic(mantissa_, exponent_ + static_cast<std::size_t>(-shift));
    }

    Dyadic half() const { return ldexp(-1); }

    Dyadic abs() const {
        Dyadic r = *this;
        if (r.mantissa_ < 0) {
            r.mantissa_ = -r.mantissa_;
        }
        return r;
    }

    /// Largest multiple of 2^-p that is <= *this.
    Dyadic floor_to(std::size_t p) const {
        if (exponent_ <= p) {
            return *this;
        }
        std::size_t drop = exponent_ - p;
        if (mantissa_ >= 0) {
            return Dyadic(BigInt(mantissa_ >> drop), p);
        }
        // shift the magnitude only; shift semantics on negative cpp_int vary
        BigInt mag = -mantissa_;
        BigInt q = mag >> drop;
        if ((q << drop) != mag) {
            ++q;
        }
        return Dyadic(BigInt(-q), p);
    }

    /// Smallest multiple of 2^-p that is >= *this.
    Dyadic ceil_to(std::size_t p) const { return -((-*this).floor_to(p)); }

    Dyadic operator-() const {
        Dyadic r = *this;
        r.mantissa_ = -r.mantissa_;
        return r;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.exponent_ >= b.exponent_) {
            return Dyadic(a.mantissa_ + (b.mantissa_ << (a.exponent_ - b.exponent_)), a.exponent_);
        }
        return Dyadic((a.mantissa_ << (b.exponent_ - a.exponent_)) + b.mantissa_, b.exponent_);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
    }
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        int c;
        if (a.exponent_ >= b.exponent_) {
            c = a.mantissa_.compare(BigInt(b.mantissa_ << (a.exponent_ - b.exponent_)));
        } else {
            c = BigInt(a.mantissa_ << (b.exponent_ - a.exponent_)).compare(b.mantissa_);
        }
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Canonical serialization "m/2^e".
    std::string to_string() const { return mantissa_.str() + "/2^" + std::to_string(exponent_); }

    /// Accepts "m/2^e", "p/q" with q a power of two, integers and finite
    /// decimals whose value is dyadic ("0.375").
    static Dyadic parse(std::string_view text) {
        std::string_view s = text;
        bool negative = false;
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            negative = s.front() == '-';
            s.remove_prefix(1);
        }
        Dyadic value;
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            BigInt num = detail::parse_unsigned(s.substr(0, slash), text);
            std::string_view den = s.substr(slash + 1);
            if (den.starts_with("2^")) {
                auto e = detail::parse_unsigned(den.substr(2), text);
                if (e > 100000) {
                    throw InvalidNumber("exponent too large in '" + std::string(text) + "'");
                }
                value = Dyadic(num, static_cast<std::size_t>(e));
            } else {
                BigInt q = detail::parse_unsigned(den, text);
                if (!detail::is_power_of_two(q)) {
                    throw InvalidNumber("'" + std::string(text) + "' is not a dyadic rational");
                }
                value = Dyadic(num, msb(q));
            }
        } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
            std::string digits(s.substr(0, dot));
            std::string_view frac = s.substr(dot + 1);
            digits += frac;
            BigInt num = detail::parse_unsigned(digits, text);
            // num / 10^k is dyadic iff 5^k divides num
            BigInt five = boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(frac.size()));
            if (num % five != 0) {
                throw InvalidNumber("'" + std::string(text) + "' is not a dyadic rational");
            }
            value = Dyadic(BigInt(num / five), frac.size());
        } else {
            value = Dyadic(detail::parse_unsigned(s, text), 0);
        }
        return negative ? -value : value;
    }

private:
    static std::size_t msb(const BigInt& v) { return boost::multiprecision::msb(v); }

    void normalize() {
        if (mantissa_ == 0) {
            exponent_ = 0;
            return;
        }
        if (exponent_ == 0) {
            return;
        }
        const bool negative = mantissa_ < 0;
        BigInt mag = negative ? BigInt(-mantissa_) : mantissa_;
        std::size_t tz = boost::multiprecision::lsb(mag);
        std::size_t drop = std::min(tz, exponent_);
        if (drop > 0) {
            mag >>= drop;
            mantissa_ = negative ? BigInt(-mag) : mag;
            exponent_ -= drop;
        }
    }

    BigInt mantissa_ = 0;
    std::size_t exponent_ = 0;
};

inline Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

/// floor or ceil of num/den on the 2^-p grid (den != 0).
inline Dyadic round_quotient(const BigInt& num, const BigInt& den, std::size_t p, bool upward) {
    BigInt n = num << p;
    BigInt d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Dyadic(upward ? detail::ceil_div(n, d) : detail::floor_div(n, d), p);
}

/// Quotient a/b rounded to the 2^-p grid, b != 0.
inline Dyadic divide_rounded(const Dyadic& a, const Dyadic& b, std::size_t p, bool upward) {
    // a/b = (ma * 2^eb) / (mb * 2^ea)
    BigInt num = a.mantissa() << b.exponent();
    BigInt den = b.mantissa() << a.exponent();
    return round_quotient(num, den, p, upward);
}

/// Closed interval [lo, hi] with dyadic endpoints, lo <= hi.
class DyadicInterval {
public:
    DyadicInterval() = default;
    DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (hi_ < lo_) {
            throw std::invalid_argument("interval with lo > hi: [" + lo_.to_string() + ", " +
                                        hi_.to_string() + "]");
        }
    }
    static DyadicInterval point(const Dyadic& x) { return DyadicInterval(x, x); }
    static DyadicInterval unit() { return DyadicInterval(Dyadic(0), Dyadic(1)); }

    const Dyadic& lo() const noexcept { return lo_; }
    const Dyadic& hi() const noexcept { return hi_; }
    Dyadic width() const { return hi_ - lo_; }
    Dyadic mid() const { return (lo_ + hi_).half(); }

    bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const DyadicInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    DyadicInterval left_half() const { return DyadicInterval(lo_, mid()); }
    DyadicInterval right_half() const { return DyadicInterval(mid(), hi_); }

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

    std::string to_string() const { return "[" + lo_.to_string() + ", " + hi_.to_string() + "]"; }

private:
    Dyadic lo_;
    Dyadic hi_;
};

/// S_n: the 2^n + 1 points k * 2^-n, k = 0..2^n, ascending.
inline std::vector<Dyadic> level_grid(std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("level_grid requires n >= 1");
    }
    std::vector<Dyadic> grid;
    const std::uint64_t count = (std::uint64_t{1} << n) + 1;
    grid.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        grid.emplace_back(BigInt(k), n);
    }
    return grid;
}

}  // namespace uct
