#pragma once

#include <cstddef>
#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "rankone/exact/rational.hpp"

namespace rankone {

/// Coefficients c(i,j,k), 0 <= i,j,k < n, with c(i,j,k) = -c(i,k,j).
///
/// Only c(i,j,k) with j < k is stored; the rest follows from skew symmetry,
/// so c(i,j,j) = 0 always holds. Entries with a repeated index are zero.
class SkewTriple {
public:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

    SkewTriple() = default;
    explicit SkewTriple(std::size_t n) : n_(n) {}

    /// Sets c(i,j,k) = v and, implicitly, c(i,k,j) = -v.
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
        check(i, j, k);
        if (j == k) {
            if (!v.is_zero()) throw validation_error("c(i,j,j) must vanish by skew symmetry");
            return;
        }
        if ((i == j || i == k) && !v.is_zero())
            throw validation_error("c(i,j,k) needs three distinct indices to be nonzero");
        const Rational stored = j < k ? v : -v;
        const Key key{i, std::min(j, k), std::max(j, k)};
        if (stored.is_zero())
            c_.erase(key);
        else
            c_[key] = stored;
    }

    /// Builds a table from independently given entries, rejecting any pair of
    /// entries that contradicts skew symmetry.
    static SkewTriple from_entries(std::size_t n, const std::map<Key, Rational>& entries) {
        SkewTriple t(n);
        for (const auto& [key, v] : entries) {
            const auto [i, j, k] = key;
            t.check(i, j, k);
            if (j == k && !v.is_zero())
                throw validation_error("skew symmetry violated: c(" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + "," + std::to_string(k + 1) + ") != 0");
            const auto mirror = entries.find(Key{i, k, j});
            if (mirror != entries.end() && mirror->second != -v)
                throw validation_error("skew symmetry violated: c(" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + "," + std::to_string(k + 1) + ") = " + v.str() +
                                       " but the swapped entry is " + mirror->second.str());
            t.set(i, j, k, v);
        }
        return t;
    }

    [[nodiscard]] Rational operator()(std::size_t i, std::size_t j, std::size_t k) const {
        check(i, j, k);
        if (j == k) return Rational(0);
        const auto it = c_.find(Key{i, std::min(j, k), std::max(j, k)});
        if (it == c_.end()) return Rational(0);
        return j < k ? it->second : -it->second;
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Nonzero stored entries c(i,j,k) with j < k.
    [[nodiscard]] const std::map<Key, Rational>& entries() const { return c_; }

    /// w(i,j,k) = c(i,j,k) + c(j,k,i) + c(k,i,j).
    [[nodiscard]] Rational cyclic_sum(std::size_t i, std::size_t j, std::size_t k) const {
        return (*this)(i, j, k) + (*this)(j, k, i) + (*this)(k, i, j);
    }

private:
    void check(std::size_t i, std::size_t j, std::size_t k) const {
        if (i >= n_ || j >= n_ || k >= n_) throw validation_error("triple index out of range");
    }
    std::size_t n_ = 0;
    std::map<Key, Rational> c_;
};

}  // namespace rankone
