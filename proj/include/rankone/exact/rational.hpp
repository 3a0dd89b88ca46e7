#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "rankone/errors.hpp"

namespace rankone {

/// Exact rational number in canonical form: gcd(|num|, den) = 1 and den > 0.
///
/// Every scalar in the library is a Rational. Arithmetic never rounds; the
/// text form is "p/q", or "p" when the denominator is 1.
class Rational {
public:
    Rational() = default;
    Rational(int v) : value_(v) {}  // NOLINT: implicit, integers are rationals
    Rational(long v) : value_(v) {}  // NOLINT
    Rational(long long v) : value_(std::to_string(v), 10) {}  // NOLINT
    Rational(long num, long den) {
        if (den == 0) throw value_error("rational with zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    /// Parses "p", "-p", "p/q" (q may be negative; result is canonicalized).
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto strip = [](std::string& t) {
            const auto b = t.find_first_not_of(" \t");
            const auto e = t.find_last_not_of(" \t");
            t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
        };
        strip(s);
        if (s.empty()) throw value_error("empty rational literal");
        auto valid_int = [](std::string_view t) {
            std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        const auto slash = s.find('/');
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
        strip(num);
        strip(den);
        if (!valid_int(num) || !valid_int(den))
            throw value_error("malformed rational literal '" + std::string(text) + "'");
        if (num[0] == '+') num.erase(0, 1);
        if (den[0] == '+') den.erase(0, 1);
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw value_error("rational with zero denominator: '" + std::string(text) + "'");
        mpq_class q(n, d);
        q.canonicalize();
        return Rational(std::move(q));
    }

    [[nodiscard]] std::string str() const { return value_.get_str(10); }
    [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    [[nodiscard]] Rational inverse() const {
        if (is_zero()) throw value_error("inverse of zero");
        return Rational(mpq_class(1) / value_);
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw value_error("division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_{0};
};

/// Integer power; negative exponents invert.
inline Rational pow(const Rational& base, int exponent) {
    Rational result(1);
    Rational b = exponent < 0 ? base.inverse() : base;
    for (int e = exponent < 0 ? -exponent : exponent; e > 0; e >>= 1) {
        if (e & 1) result *= b;
        b *= b;
    }
    return result;
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace rankone

template <>
struct std::hash<rankone::Rational> {
    std::size_t operator()(const rankone::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
