#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "rankone/exact/matrix.hpp"
#include "rankone/pairs.hpp"
#include "rankone/skew_triple.hpp"

namespace rankone {

/// Nonempty sequence of letters in 0..N-1 (JSON and text use 1-based letters).
using Word = std::vector<std::size_t>;

/// Noncommutative polynomial without constant term: sum of coeff * x_{w1} ... x_{ws}.
///
/// Terms are kept canonical: one entry per word, zero coefficients dropped.
class NCPoly {
public:
    NCPoly() = default;
    explicit NCPoly(std::size_t alphabet_size) : n_(alphabet_size) {}

    /// Adds coeff * word, merging with an existing term of the same word.
    NCPoly& add(const Word& word, const Rational& coeff) {
        if (word.empty()) throw validation_error("constant terms are not representable");
        for (auto letter : word)
            if (letter >= n_)
                throw validation_error("letter " + std::to_string(letter + 1) + " outside alphabet of size " +
                                       std::to_string(n_));
        if (coeff.is_zero()) return *this;
        auto [it, inserted] = terms_.try_emplace(word, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
        return *this;
    }

    [[nodiscard]] std::size_t alphabet_size() const { return n_; }
    [[nodiscard]] const std::map<Word, Rational>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& [w, c] : terms_) d = std::max(d, w.size());
        return d;
    }
    [[nodiscard]] Rational coeff(const Word& w) const {
        const auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    NCPoly& operator+=(const NCPoly& o) {
        if (o.n_ != n_) throw dimension_error("adding polynomials over different alphabets");
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator*(const Rational& s, const NCPoly& p) {
        NCPoly r(p.n_);
        for (const auto& [w, c] : p.terms_) r.add(w, s * c);
        return r;
    }
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    /// Text form with 1-based letters, e.g. "2*x1*x3 - 1/2*x2".
    [[nodiscard]] std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [w, c] : terms_) {
            const bool neg = c.sign() < 0;
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            const Rational mag = neg ? -c : c;
            if (mag != Rational(1)) out += mag.str() + "*";
            for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "*x" : "x") + std::to_string(w[i] + 1);
        }
        return out;
    }

private:
    std::size_t n_ = 0;
    std::map<Word, Rational> terms_;
};

/// Sum over terms of coeff * operand[w1] * ... * operand[ws] (matrix product in word order).
inline Matrix nc_evaluate(const NCPoly& p, const std::vector<Matrix>& operands) {
    if (operands.size() != p.alphabet_size())
        throw dimension_error("nc_evaluate: " + std::to_string(operands.size()) + " operands for alphabet of size " +
                              std::to_string(p.alphabet_size()));
    const std::size_t n = operands.empty() ? 0 : operands.front().rows();
    for (const auto& m : operands)
        if (m.rows() != n || m.cols() != n) throw dimension_error("nc_evaluate: operands must share one square size");
    Matrix total(n, n);
    for (const auto& [w, c] : p.terms()) {
        Matrix prod = operands[w.front()];
        for (std::size_t r = 1; r < w.size(); ++r) prod = prod * operands[w[r]];
        total.add_scaled(prod, c);
    }
    return total;
}

/// Degree-1 polynomial sum coeffs[i] * x_i.
inline NCPoly linear_poly(std::size_t alphabet_size, const std::map<std::size_t, Rational>& coeffs) {
    NCPoly p(alphabet_size);
    for (const auto& [i, c] : coeffs) p.add(Word{i}, c);
    return p;
}

/// sum over distinct i,j,k of c(i,j,k) x_{ij} x_{ik}, over the alphabet of
/// unordered pairs ranked by pair_index.
inline NCPoly level2_poly(const SkewTriple& c) {
    const std::size_t n = c.n();
    NCPoly p(pair_count(n));
    for (const auto& [key, v] : c.entries()) {
        const auto [i, j, k] = key;
        if (i == j || i == k) continue;
        p.add(Word{pair_index(n, i, j), pair_index(n, i, k)}, v);
        p.add(Word{pair_index(n, i, k), pair_index(n, i, j)}, -v);
    }
    return p;
}

}  // namespace rankone
