// Exact rational arithmetic for schedule times and latencies.
//
// All timing comparisons in the library are decidable: equality of Bell
// measurement times and boundary cases (a wait of exactly zero) must not
// depend on floating-point rounding. Values are int64 fractions, always
// normalized (den > 0, gcd(num, den) == 1); intermediates use __int128 and
// narrowing is checked.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rtl {

class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize_small(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(w(a.num_) * b.den_ + w(b.num_) * a.den_, w(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128(w(a.num_) * b.den_ - w(b.num_) * a.den_, w(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(w(a.num_) * b.num_, w(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from_i128(w(a.num_) * b.den_, w(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return w(a.num_) * b.den_ < w(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational half() const { return *this / Rational(2); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    static Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
    static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

    /// Renders "7", "-3/2"; integers drop the denominator.
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += std::to_string(den_);
        }
        return s;
    }

    /// Accepts integers ("4", "-2"), fractions ("3/2"), and finite decimals
    /// ("1.5", ".25"). No exponents. Returns nullopt on malformed input.
    static std::optional<Rational> parse(std::string_view text) {
        if (text.empty()) return std::nullopt;
        std::size_t i = 0;
        bool neg = false;
        if (text[i] == '+' || text[i] == '-') {
            neg = text[i] == '-';
            ++i;
        }
        std::int64_t intpart = 0;
        std::size_t digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            if (intpart > (INT64_MAX - 9) / 10) return std::nullopt;
            intpart = intpart * 10 + (text[i] - '0');
            ++i;
            ++digits;
        }
        if (i == text.size()) {
            if (digits == 0) return std::nullopt;
            return Rational(neg ? -intpart : intpart);
        }
        if (text[i] == '/') {
            ++i;
            if (digits == 0) return std::nullopt;
            std::int64_t den = 0;
            std::size_t dd = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                if (den > (INT64_MAX - 9) / 10) return std::nullopt;
                den = den * 10 + (text[i] - '0');
                ++i;
                ++dd;
            }
            if (i != text.size() || dd == 0 || den == 0) return std::nullopt;
            return Rational(neg ? -intpart : intpart, den);
        }
        if (text[i] == '.') {
            ++i;
            std::int64_t frac = 0;
            std::int64_t scale = 1;
            std::size_t fd = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                if (frac > (INT64_MAX - 9) / 10 || scale > INT64_MAX / 10) return std::nullopt;
                frac = frac * 10 + (text[i] - '0');
                scale *= 10;
                ++i;
                ++fd;
            }
            if (i != text.size() || fd == 0) return std::nullopt;
            Rational r = Rational(intpart) + Rational(frac, scale);
            return neg ? -r : r;
        }
        return std::nullopt;
    }

private:
    using i128 = __int128;

    static i128 w(std::int64_t v) { return static_cast<i128>(v); }

    void normalize_small() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Rational from_i128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 a = n < 0 ? -n : n;
        i128 b = d;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace rtl
