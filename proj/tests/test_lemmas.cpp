#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rankone/lemmas.hpp"
#include "rankone/random.hpp"

using namespace rankone;

TEST(TreeDeterminants, SingleEdge) {
    const RootedTree t(2, {{0, 1, 1}}, 0);
    EXPECT_EQ(det_P_tree(t).computed, Rational(2));
    EXPECT_TRUE(det_P_tree(t).holds());
    EXPECT_EQ(det_Q_tree(t).computed, Rational(2));
    EXPECT_TRUE(det_Q_tree(t).holds());
}

TEST(TreeDeterminants, PathOfTwoEdges) {
    const RootedTree t(3, {{0, 1, 1}, {1, 2, 1}}, 0);
    EXPECT_EQ(det_P_tree(t).computed, Rational(3));
    EXPECT_EQ(det(pqr_matrices(3, t.arcs()).P), oracle::cofactor_det(Matrix{{2, -1}, {-1, 2}}));
    EXPECT_EQ(det_Q_tree(RootedTree(3, {{0, 1, 5}, {2, 1, Rational(-1, 2)}}, 1)).computed, Rational(3));
}

TEST(TreeDeterminants, RandomTrees) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto rng = random::trial_rng(71, s);
        const RootedTree t = random::rooted_tree(rng, random::uniform(rng, 1, 8));
        const PQR m = pqr_matrices(t.n(), t.arcs());
        const auto p = det_P_tree(t), r = det_R_tree(t), q = det_Q_tree(t);
        EXPECT_EQ(p.computed, oracle::cofactor_det(m.P));
        EXPECT_TRUE(p.holds()) << "trial " << s;
        EXPECT_TRUE(r.holds()) << "trial " << s;
        EXPECT_EQ(q.computed, Rational(static_cast<long>(t.n())));
    }
}

TEST(TreeDeterminants, RootIndependence) {
    auto rng = random::trial_rng(72, 0);
    const RootedTree t = random::rooted_tree(rng, 6);
    for (std::size_t root = 0; root < 6; ++root) {
        const RootedTree u(6, t.arcs(), root);
        EXPECT_EQ(det_P_tree(u).closed_form, det_P_tree(t).closed_form);
        EXPECT_EQ(det_R_tree(u).closed_form, det_R_tree(t).closed_form);
    }
}

TEST(TreeDeterminants, RejectsNonTrees) {
    EXPECT_THROW(RootedTree(3, {{0, 1, 1}}, 0), validation_error);
    EXPECT_THROW(RootedTree(3, {{0, 1, 1}, {1, 0, 2}}, 0), validation_error);
    EXPECT_THROW(RootedTree(2, {{0, 1, 1}}, 2), validation_error);
}

TEST(CycleDeterminants, TriangleWithUnitHolonomy) {
    const OneCycleGraph g(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
    const auto r = pqr_cycle(g);
    EXPECT_EQ(r.holonomy, Rational(1));
    EXPECT_EQ(r.Q.computed, Rational(0));
    EXPECT_TRUE(r.P.holds());
    EXPECT_TRUE(r.R.holds());
}

TEST(CycleDeterminants, TriangleWithHolonomyTwo) {
    const OneCycleGraph g(3, {{0, 1, 2}, {1, 2, 1}, {2, 0, 1}});
    const auto r = pqr_cycle(g);
    EXPECT_EQ(r.Q.computed, oracle::cofactor_det(pqr_matrices(3, g.arcs()).Q));
    EXPECT_EQ(r.Q.computed, Rational(-1, 2));
    EXPECT_TRUE(r.Q.holds());
    EXPECT_TRUE(r.P.holds());
    EXPECT_TRUE(r.R.holds());
}

TEST(CycleDeterminants, RandomGraphsWithAntlers) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto rng = random::trial_rng(73, s);
        const std::size_t n = random::uniform(rng, 3, 8);
        const auto coherent = pqr_cycle(random::one_cycle_graph(rng, n, true));
        EXPECT_TRUE(coherent.coherent);
        EXPECT_TRUE(coherent.P.holds()) << "trial " << s;
        EXPECT_TRUE(coherent.R.holds()) << "trial " << s;
        EXPECT_TRUE(coherent.Q.holds()) << "trial " << s;
        const auto any = pqr_cycle(random::one_cycle_graph(rng, n, false));
        EXPECT_TRUE(any.Q.holds()) << "trial " << s;
    }
}

TEST(CycleDeterminants, RejectsWrongShapes) {
    EXPECT_THROW(OneCycleGraph(3, {{0, 1, 1}, {1, 2, 1}}), validation_error);
    EXPECT_THROW(OneCycleGraph(4, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}), validation_error);
}

TEST(Psi, ReproducesGramMatrices) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto rng = random::trial_rng(74, s);
        const auto g = random::one_cycle_graph(rng, random::uniform(rng, 3, 6), false);
        const PQR m = pqr_matrices(g.n(), g.arcs());
        EXPECT_EQ(psi_gram(g.arcs(), true, true), m.P);
        EXPECT_EQ(psi_gram(g.arcs(), true, false), m.Q);
        EXPECT_EQ(psi_gram(g.arcs(), false, false), m.R);
    }
}

TEST(GramMinors, Examples) {
    const auto id = gram_minor_identity({unit_vector(4, 1), unit_vector(4, 3)});
    EXPECT_EQ(id.computed, Rational(1));
    EXPECT_EQ(id.closed_form, Rational(1));
    const Vector v{1, Rational(-1, 2), 3};
    const auto one = gram_minor_identity({v});
    EXPECT_EQ(one.computed, dot(v, v));
    EXPECT_EQ(one.closed_form, Rational(1) + Rational(1, 4) + Rational(9));
}

TEST(GramMinors, RandomFamilies) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto rng = random::trial_rng(75, s);
        const std::size_t n = random::uniform(rng, 1, 6), k = random::uniform(rng, 1, n);
        std::vector<Vector> vs;
        for (std::size_t i = 0; i < k; ++i) vs.push_back(random::vector(rng, n));
        const auto id = gram_minor_identity(vs);
        EXPECT_EQ(id.computed, oracle::cofactor_det(gram(vs, vs)));
        EXPECT_TRUE(id.holds()) << "trial " << s;
    }
}

TEST(Angle, Examples) {
    const Subspace a(3, {Vector{1, 2, 0}, Vector{0, 1, 1}});
    EXPECT_EQ(angle(a, a), Rational(1));
    const Subspace x(2, {unit_vector(2, 0)}), y(2, {unit_vector(2, 1)});
    EXPECT_EQ(angle(x, y), Rational(0));
    EXPECT_EQ(orth_complement_angle_duality(a, a), std::make_pair(Rational(1), Rational(1)));
    EXPECT_EQ(orth_complement_angle_duality(x, y), std::make_pair(Rational(0), Rational(0)));
}

TEST(Angle, InvariantUnderRebasing) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto rng = random::trial_rng(76, s);
        const std::size_t n = random::uniform(rng, 2, 6), k = random::uniform(rng, 1, n);
        const auto basis = random::independent_vectors(rng, n, k);
        const Subspace a(n, basis), b(n, random::independent_vectors(rng, n, k));
        // Change of basis by a random invertible matrix.
        Matrix change = random::matrix(rng, k, k);
        while (det(change).is_zero()) change = random::matrix(rng, k, k);
        std::vector<Vector> rebased(k, Vector(n));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t x = 0; x < n; ++x) rebased[i][x] += change(i, j) * basis[j][x];
        EXPECT_EQ(angle(Subspace(n, rebased), b), angle(a, b));
    }
}

TEST(Angle, ComplementDuality) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto rng = random::trial_rng(77, s);
        const std::size_t n = random::uniform(rng, 2, 6), k = random::uniform(rng, 1, n - 1);
        const Subspace a(n, random::independent_vectors(rng, n, k)), b(n, random::independent_vectors(rng, n, k));
        const auto [direct, dual] = orth_complement_angle_duality(a, b);
        EXPECT_EQ(direct, dual) << "trial " << s;
        // Complements are orthogonal to the original bases.
        const Subspace perp = a.complement();
        for (const auto& u : perp.basis())
            for (const auto& v : a.basis()) EXPECT_TRUE(dot(u, v).is_zero());
    }
}

TEST(Subspace, RejectsDependentBasis) {
    EXPECT_THROW(Subspace(2, {Vector{1, 2}, Vector{2, 4}}), validation_error);
    EXPECT_THROW(Subspace(2, {Vector{1, 2, 3}}), dimension_error);
}

TEST(ComplementVectors, Examples) {
    const auto single = tree_complement_vectors(RootedTree(1, {}, 0));
    EXPECT_EQ(single.b, unit_vector(1, 0));
    EXPECT_EQ(single.f, unit_vector(1, 0));
    const auto edge = tree_complement_vectors(RootedTree(2, {{0, 1, 2}}, 0));
    EXPECT_EQ(edge.b, (Vector{1, Rational(1, 2)}));
}

TEST(ComplementVectors, OrthogonalToTreeFamilies) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto rng = random::trial_rng(78, s);
        const RootedTree t = random::rooted_tree(rng, random::uniform(rng, 1, 8));
        const auto cv = tree_complement_vectors(t);
        for (const auto& a : t.arcs()) {
            EXPECT_TRUE(dot(cv.b, alpha_vector(t.n(), a)).is_zero());
            EXPECT_TRUE(dot(cv.f, e_vector(t.n(), a)).is_zero());
        }
    }
}
