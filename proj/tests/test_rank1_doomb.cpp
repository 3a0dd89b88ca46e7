#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rankone/bundle.hpp"
#include "rankone/doomb.hpp"
#include "rankone/random.hpp"

using namespace rankone;

namespace {

RankOneSystem dense_system(random::Rng& rng, std::size_t n, std::size_t N) {
    std::vector<Vector> e, a;
    for (std::size_t i = 0; i < N; ++i) {
        e.push_back(random::vector(rng, n, 0));
        a.push_back(random::vector(rng, n, 0));
    }
    return RankOneSystem(n, e, a);
}

}  // namespace

TEST(RankOneMatrix, Examples) {
    const RankOneSystem unit(2, {unit_vector(2, 0)}, {unit_vector(2, 0)});
    EXPECT_EQ(rank_one_matrix(unit, 0), (Matrix{{1, 0}, {0, 0}}));
    const RankOneSystem zero(2, {Vector{1, 1}}, {Vector{0, 0}});
    EXPECT_TRUE(rank_one_matrix(zero, 0).is_zero());
    const RankOneSystem s(2, {Vector{1, 2}}, {Vector{3, 4}});
    EXPECT_EQ(rank_one_matrix(s, 0), (Matrix{{3, 4}, {6, 8}}));
    EXPECT_EQ(rank(rank_one_matrix(s, 0)), 1u);
}

TEST(RankOneSystem, PairingAndValidation) {
    const RankOneSystem s(2, {Vector{1, 2}, Vector{0, 1}}, {Vector{3, 4}, Vector{5, 6}});
    EXPECT_EQ(s.pairing()(0, 1), dot(s.alpha(1), s.e(0)));
    EXPECT_EQ(s.alpha_e(1, 0), dot(s.alpha(1), s.e(0)));
    EXPECT_THROW(RankOneSystem(2, {Vector{1, 2}}, {Vector{1, 2, 3}}), dimension_error);
    EXPECT_THROW(RankOneSystem(2, {Vector{1, 2}}, {}), dimension_error);
}

TEST(Assemble, Examples) {
    const RankOneSystem unit(2, {unit_vector(2, 0)}, {unit_vector(2, 0)});
    EXPECT_EQ(assemble(unit, linear_poly(1, {{0, 1}})), (Matrix{{1, 0}, {0, 0}}));
    const Rational c(5, 2);
    const LineBundle b(2, {{0, 1, Rational(1), c, 0}});
    EXPECT_EQ(assemble(pair_system(b), laplacian_poly(b)), (Matrix{{c, -c}, {-c, c}}));
    EXPECT_THROW(assemble(unit, NCPoly(2)), dimension_error);
}

TEST(WordScalar, ProductContractsToOuterProduct) {
    for (std::uint64_t t = 0; t < 30; ++t) {
        auto rng = random::trial_rng(41, t);
        const RankOneSystem s = random::rank_one_system(rng, 3, 3);
        Word w(random::uniform(rng, 1, 4));
        for (auto& x : w) x = random::uniform(rng, 0, 2);
        Matrix prod = Matrix::identity(3);
        for (auto x : w) prod = prod * rank_one_matrix(s, x);
        EXPECT_EQ(prod, word_scalar(s, w) * Matrix::outer(s.e(w.front()), s.alpha(w.back())));
    }
}

TEST(WeightTable, LinearPolynomialIsDiagonal) {
    auto rng = random::trial_rng(42, 0);
    const RankOneSystem s = random::rank_one_system(rng, 3, 4);
    const NCPoly p = linear_poly(4, {{0, 2}, {1, -1}, {3, Rational(1, 3)}});
    const WeightTable w = weight_table(s, p);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(w(a, b), a == b ? p.coeff({a}) : Rational(0));
}

TEST(WeightTable, TwoLetterWord) {
    const RankOneSystem s(2, {Vector{1, 2}, Vector{3, -1}}, {Vector{2, 1}, Vector{1, 5}});
    NCPoly p(2);
    p.add({1, 0}, 1);  // M_2 M_1: head 2, tail 1
    const WeightTable w = weight_table(s, p);
    EXPECT_EQ(w(0, 1), dot(s.alpha(1), s.e(0)));
    EXPECT_EQ(w(0, 0), Rational(0));
    EXPECT_EQ(w(1, 0), Rational(0));
    EXPECT_EQ(w(1, 1), Rational(0));
}

TEST(WeightTable, MatchesExplicitProducts) {
    for (std::uint64_t t = 0; t < 30; ++t) {
        auto rng = random::trial_rng(43, t);
        const RankOneSystem s = dense_system(rng, 3, 4);
        const NCPoly p = random::ncpoly(rng, 4, 3, 10);
        EXPECT_EQ(weight_table(s, p), oracle::word_weights(s, p)) << "trial " << t;
    }
}

TEST(Doomb, ValidatesDegrees) {
    EXPECT_NO_THROW(Doomb(3, {{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_NO_THROW(Doomb(2, {{0, 0}, {1, 1}}));
    EXPECT_THROW(Doomb(3, {{0, 1}, {0, 2}}), validation_error);
    EXPECT_THROW(Doomb(3, {{0, 2}, {1, 2}}), validation_error);
    EXPECT_THROW(Doomb(2, {{0, 2}}), validation_error);
}

TEST(Doomb, Components) {
    const auto comps = Doomb(5, {{3, 1}, {1, 4}, {0, 2}, {2, 0}}).components();
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_TRUE(comps[0].cycle);
    EXPECT_EQ(comps[0].vertices, (std::vector<std::size_t>{0, 2}));
    EXPECT_FALSE(comps[1].cycle);
    EXPECT_EQ(comps[1].vertices, (std::vector<std::size_t>{3, 1, 4}));
}

TEST(EnumerateDoombs, SmallCounts) {
    EXPECT_EQ(enumerate_doombs(3, 0).size(), 1u);
    EXPECT_EQ(enumerate_doombs(3, 2).size(), 18u);
    EXPECT_EQ(enumerate_doombs(2, 2).size(), 2u);
    EXPECT_EQ(enumerate_doombs(2, 3).size(), 0u);
}

TEST(EnumerateDoombs, CensusMatchesBruteForce) {
    for (std::size_t N = 1; N <= 4; ++N)
        for (std::size_t k = 0; k <= N; ++k) {
            const std::size_t formula = oracle::binomial(N, k) * oracle::binomial(N, k) * oracle::factorial(k);
            EXPECT_EQ(enumerate_doombs(N, k).size(), formula) << "N " << N << " k " << k;
            EXPECT_EQ(oracle::doomb_census(N, k), formula);
        }
}

TEST(EnumerateDoombs, RespectsSupportAndOrder) {
    const std::vector<DEdge> allowed{{0, 1}, {1, 0}, {2, 2}};
    const auto gs = enumerate_doombs(3, 2, allowed);
    ASSERT_EQ(gs.size(), 3u);
    for (std::size_t i = 0; i + 1 < gs.size(); ++i) EXPECT_LT(gs[i].edges(), gs[i + 1].edges());
    for (const auto& g : gs)
        for (const auto& e : g.edges()) EXPECT_NE(std::find(allowed.begin(), allowed.end(), e), allowed.end());
}

TEST(DoombWeight, Examples) {
    Matrix w{{2, 3}, {5, 7}};
    EXPECT_EQ(doomb_weight(Doomb(2, {}), w), Rational(1));
    EXPECT_EQ(doomb_weight(Doomb(2, {{1, 1}}), w), Rational(7));
    EXPECT_EQ(doomb_weight(Doomb(2, {{0, 1}, {1, 0}}), w), Rational(15));
    EXPECT_EQ(doomb_weight(Doomb(3, {{0, 1}, {1, 2}}), Matrix{{0, 2, 0}, {0, 0, 3}, {0, 0, 0}}), Rational(6));
}

TEST(EdgeGramDet, Examples) {
    const RankOneSystem s(2, {Vector{2, 0}, Vector{0, 3}}, {Vector{5, 0}, Vector{0, 7}});
    EXPECT_EQ(edge_gram_det(Doomb(2, {{0, 0}}), s), dot(s.alpha(0), s.e(0)));
    EXPECT_EQ(edge_gram_det(Doomb(2, {{0, 0}, {1, 1}}), s), dot(s.alpha(0), s.e(0)) * dot(s.alpha(1), s.e(1)));
}

TEST(EdgeGramDet, RepeatedIndexInMatrixUnitSetupVanishes) {
    // M_(ij) = u_i u_j^T: loops (i1 j1), (i1 j2) share the row index i1.
    std::vector<Vector> e, a;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            e.push_back(unit_vector(2, i));
            a.push_back(unit_vector(2, j));
        }
    const RankOneSystem s(2, e, a);
    EXPECT_EQ(edge_gram_det(Doomb(4, {{0, 0}, {1, 1}}), s), Rational(0));
    EXPECT_EQ(edge_gram_det(Doomb(4, {{0, 0}, {3, 3}}), s), Rational(1));
}

TEST(MuCombinatorial, LowOrders) {
    for (std::uint64_t t = 0; t < 20; ++t) {
        auto rng = random::trial_rng(44, t);
        const RankOneSystem s = random::rank_one_system(rng, 3, 4);
        const NCPoly p = random::ncpoly(rng, 4, 2, 8);
        EXPECT_EQ(mu_combinatorial(s, p, 0), Rational(1));
        EXPECT_EQ(mu_combinatorial(s, p, 1), assemble(s, p).trace());
        EXPECT_EQ(mu_combinatorial(s, p, 2), oracle::minor_sum(assemble(s, p), 2));
    }
}

TEST(MuCombinatorial, AuditTermsSumToTotal) {
    auto rng = random::trial_rng(45, 0);
    const RankOneSystem s = random::rank_one_system(rng, 3, 3);
    const NCPoly p = random::ncpoly(rng, 3, 3, 10);
    std::vector<DoombTerm> terms;
    const Rational mu = mu_combinatorial(s, p, 2, true, &terms);
    Rational sum;
    for (const auto& t : terms) sum += t.weight * t.gram_det;
    EXPECT_EQ(sum, mu);
}

TEST(CharpolyCombinatorial, ZeroPolynomialGivesPower) {
    auto rng = random::trial_rng(46, 0);
    const RankOneSystem s = random::rank_one_system(rng, 3, 2);
    EXPECT_EQ(charpoly_combinatorial(s, NCPoly(2)), Polynomial::monomial(3));
}

TEST(CharpolyCombinatorial, MatrixUnitSetupGivesUsualCharPoly) {
    for (std::uint64_t t = 0; t < 10; ++t) {
        auto rng = random::trial_rng(47, t);
        const std::size_t n = random::uniform(rng, 1, 3);
        const Matrix a = random::matrix(rng, n, n);
        std::vector<Vector> e, al;
        std::map<std::size_t, Rational> coeffs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                e.push_back(unit_vector(n, i));
                al.push_back(unit_vector(n, j));
                coeffs[i * n + j] = a(i, j);
            }
        const RankOneSystem s(n, e, al);
        EXPECT_EQ(charpoly_combinatorial(s, linear_poly(n * n, coeffs)), char_poly(a));
    }
}

TEST(CharpolyCombinatorial, MatchesOracle) {
    for (std::uint64_t t = 0; t < 40; ++t) {
        auto rng = random::trial_rng(48, t);
        const std::size_t n = random::uniform(rng, 1, 4), N = random::uniform(rng, 1, 5);
        const RankOneSystem s = random::rank_one_system(rng, n, N);
        const NCPoly p = random::ncpoly(rng, N, 3, 12);
        const Matrix m = assemble(s, p);
        EXPECT_EQ(charpoly_combinatorial(s, p), char_poly(m)) << "trial " << t;
        for (std::size_t k = n + 1; k <= N; ++k) EXPECT_TRUE(mu_combinatorial(s, p, k).is_zero());
        EXPECT_EQ(mu_combinatorial(s, p, n, false), mu_combinatorial(s, p, n, true));
    }
}
