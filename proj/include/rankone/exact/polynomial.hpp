#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rankone/exact/matrix.hpp"

namespace rankone {

/// Univariate polynomial; coefficient i multiplies t^i. Trailing zeros are trimmed.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(std::size_t degree, Rational coeff = 1) {
        std::vector<Rational> c(degree + 1);
        c[degree] = std::move(coeff);
        return Polynomial(std::move(c));
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
    [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    [[nodiscard]] const std::vector<Rational>& coefficients() const { return c_; }

    [[nodiscard]] Rational operator()(const Rational& t) const {
        Rational v;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
        return v;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Human-readable form, highest degree first, e.g. "t^2 - 2*t + 1".
    [[nodiscard]] std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (long i = degree(); i >= 0; --i) {
            const Rational& x = c_[static_cast<std::size_t>(i)];
            if (x.is_zero()) continue;
            const bool neg = x.sign() < 0;
            const Rational mag = neg ? -x : x;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            const bool unit = mag == Rational(1);
            if (i == 0 || !unit) out += mag.str();
            if (i > 0) {
                if (!unit) out += "*";
                out += "t";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// det(tI - m) by the Faddeev-LeVerrier recurrence.
inline Polynomial char_poly(const Matrix& m) {
    m.require_square("char_poly");
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        c[n - k] = -(m * mk).trace() / Rational(static_cast<long>(k));
    }
    return Polynomial(std::move(c));
}

/// sum_k (-1)^k mu_k t^{n-k} for a coefficient list mu_0..mu_n.
inline Polynomial poly_from_mu(const std::vector<Rational>& mu) {
    const std::size_t n = mu.size() - 1;
    std::vector<Rational> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[n - k] = k % 2 ? -mu[k] : mu[k];
    return Polynomial(std::move(c));
}

/// Calls f on every k-subset of {0..n-1}, in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    if (k > n) return;
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    while (true) {
        f(s);
        std::size_t i = k;
        while (i > 0 && s[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++s[i - 1];
        for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
}

/// Sum of all k x k principal minors, the k-th exterior-power trace. Zero for k > n.
inline Rational principal_minor_sum(const Matrix& m, std::size_t k) {
    m.require_square("principal_minor_sum");
    Rational total;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& s) { total += det(m.select(s, s)); });
    return total;
}

}  // namespace rankone
