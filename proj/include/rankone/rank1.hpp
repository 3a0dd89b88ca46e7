#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rankone/exact/matrix.hpp"
#include "rankone/ncpoly.hpp"

namespace rankone {

/// Families e_1..e_N and alpha_1..alpha_N in Q^n defining M_i(v) = <alpha_i, v> e_i.
class RankOneSystem {
public:
    RankOneSystem() = default;
    RankOneSystem(std::size_t n, std::vector<Vector> e, std::vector<Vector> alpha)
        : n_(n), e_(std::move(e)), alpha_(std::move(alpha)) {
        if (e_.size() != alpha_.size())
            throw dimension_error("rank-one system needs as many e vectors as alpha vectors");
        for (const auto* fam : {&e_, &alpha_})
            for (const auto& v : *fam)
                if (v.size() != n_) throw dimension_error("rank-one vector of dimension " + std::to_string(v.size()) +
                                                          " in ambient dimension " + std::to_string(n_));
        pairing_ = gram(alpha_, e_).transpose();
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::size_t N() const { return e_.size(); }
    [[nodiscard]] const std::vector<Vector>& e() const { return e_; }
    [[nodiscard]] const std::vector<Vector>& alpha() const { return alpha_; }
    [[nodiscard]] const Vector& e(std::size_t i) const { return e_.at(i); }
    [[nodiscard]] const Vector& alpha(std::size_t i) const { return alpha_.at(i); }

    /// pairing()(i, j) = <alpha_j, e_i>.
    [[nodiscard]] const Matrix& pairing() const { return pairing_; }
    /// <alpha_a, e_b>.
    [[nodiscard]] const Rational& alpha_e(std::size_t a, std::size_t b) const { return pairing_(b, a); }

private:
    std::size_t n_ = 0;
    std::vector<Vector> e_, alpha_;
    Matrix pairing_;
};

/// Matrix of M_i in the standard basis: the outer product e_i alpha_i^T.
inline Matrix rank_one_matrix(const RankOneSystem& sys, std::size_t i) {
    if (i >= sys.N()) throw dimension_error("rank-one index " + std::to_string(i + 1) + " outside 1.." + std::to_string(sys.N()));
    return Matrix::outer(sys.e(i), sys.alpha(i));
}

/// M = P(M_1, ..., M_N).
inline Matrix assemble(const RankOneSystem& sys, const NCPoly& p) {
    if (p.alphabet_size() != sys.N())
        throw dimension_error("polynomial alphabet " + std::to_string(p.alphabet_size()) + " vs family size " +
                              std::to_string(sys.N()));
    std::vector<Matrix> ops;
    ops.reserve(sys.N());
    for (std::size_t i = 0; i < sys.N(); ++i) ops.push_back(rank_one_matrix(sys, i));
    return nc_evaluate(p, ops);
}

/// Scalar s with M_{w1} ... M_{ws} = s * e_{w1} alpha_{ws}^T, namely
/// prod_{r<s} <alpha_{w_r}, e_{w_{r+1}}>.
inline Rational word_scalar(const RankOneSystem& sys, const Word& w) {
    Rational s(1);
    for (std::size_t r = 0; r + 1 < w.size() && !s.is_zero(); ++r) s *= sys.alpha_e(w[r], w[r + 1]);
    return s;
}

}  // namespace rankone
