#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "rankone/bundle.hpp"
#include "rankone/lemmas.hpp"
#include "rankone/ncpoly.hpp"
#include "rankone/rank1.hpp"
#include "rankone/skew_triple.hpp"

namespace rankone::random {

using Rng = std::mt19937_64;

/// Independent stream for trial `index` of a campaign seeded with `seed`.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(rng() % (hi - lo + 1)) + lo;
}

inline bool coin(Rng& rng, double p = 0.5) { return static_cast<double>(rng() % 1000000) < p * 1000000.0; }

/// Draw from {0, 1, -1, 2, -2, 1/2, -1/2, 3, 1/3}; `zero_weight` extra copies of 0 tune sparsity.
inline Rational palette(Rng& rng, std::size_t zero_weight = 1) {
    static const Rational values[] = {Rational(1), Rational(-1), Rational(2),    Rational(-2),
                                      Rational(1, 2), Rational(-1, 2), Rational(3), Rational(1, 3)};
    const std::size_t r = uniform(rng, 0, 7 + zero_weight);
    return r < 8 ? values[r] : Rational(0);
}

inline Rational nonzero(Rng& rng) { return palette(rng, 0); }

inline Vector vector(Rng& rng, std::size_t n, std::size_t zero_weight = 1) {
    Vector v(n);
    for (auto& x : v) x = palette(rng, zero_weight);
    return v;
}

inline Matrix matrix(Rng& rng, std::size_t rows, std::size_t cols, std::size_t zero_weight = 1) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = palette(rng, zero_weight);
    return m;
}

inline RankOneSystem rank_one_system(Rng& rng, std::size_t n, std::size_t N) {
    std::vector<Vector> e, a;
    for (std::size_t i = 0; i < N; ++i) {
        e.push_back(vector(rng, n));
        a.push_back(vector(rng, n));
    }
    return RankOneSystem(n, std::move(e), std::move(a));
}

/// Up to `max_terms` words of length 1..max_degree over N letters.
inline NCPoly ncpoly(Rng& rng, std::size_t N, std::size_t max_degree, std::size_t max_terms) {
    NCPoly p(N);
    const std::size_t terms = uniform(rng, 1, max_terms);
    for (std::size_t t = 0; t < terms; ++t) {
        Word w(uniform(rng, 1, max_degree));
        for (auto& x : w) x = uniform(rng, 0, N - 1);
        p.add(w, nonzero(rng));
    }
    return p;
}

/// Random simple graph with at most `max_edges` edges, nonzero phi and nonzero weights.
/// With `flat`, phi is a gauge transform (phi_uv = g_u / g_v) so every holonomy is 1.
inline LineBundle bundle(Rng& rng, std::size_t n, std::size_t max_edges, bool flat = false) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    const std::size_t hi = std::min(max_edges, pairs.size());
    const std::size_t m = hi == 0 ? 0 : uniform(rng, std::min(n / 2, hi), hi);
    std::vector<Rational> gauge(n);
    for (auto& g : gauge) g = nonzero(rng);
    std::vector<BundleEdge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        auto [u, v] = pairs[i];
        if (coin(rng)) std::swap(u, v);
        const Rational phi = flat ? gauge[u] / gauge[v] : nonzero(rng);
        edges.push_back({u, v, phi, nonzero(rng), 0});
    }
    std::sort(edges.begin(), edges.end(), [](const BundleEdge& a, const BundleEdge& b) {
        return std::minmax(a.u, a.v) < std::minmax(b.u, b.v);
    });
    return LineBundle(n, std::move(edges));
}

/// Complete graph with random nonzero phi.
inline LineBundle complete_bundle(Rng& rng, std::size_t n) {
    std::vector<BundleEdge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, nonzero(rng), Rational(1), 0});
    return LineBundle(n, std::move(edges));
}

/// Symmetric weights with zero diagonal.
inline Matrix symmetric_weights(Rng& rng, std::size_t n, std::size_t zero_weight = 1) {
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c(i, j) = c(j, i) = palette(rng, zero_weight);
    return c;
}

inline SkewTriple skew_triple(Rng& rng, std::size_t n, std::size_t zero_weight = 3) {
    SkewTriple c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (i != j && i != k) c.set(i, j, k, palette(rng, zero_weight));
    return c;
}

inline std::vector<std::size_t> permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Random tree on n vertices with randomly directed arcs and a random root.
inline RootedTree rooted_tree(Rng& rng, std::size_t n) {
    const auto label = permutation(rng, n);
    std::vector<ArcPhi> arcs;
    for (std::size_t v = 1; v < n; ++v) {
        std::size_t a = label[v], b = label[uniform(rng, 0, v - 1)];
        if (coin(rng)) std::swap(a, b);
        arcs.push_back({a, b, nonzero(rng)});
    }
    return RootedTree(n, std::move(arcs), uniform(rng, 0, n - 1));
}

/// Random connected graph with one cycle of length >= 3 (n >= 3). With
/// `coherent`, the cycle arcs follow one direction of travel.
inline OneCycleGraph one_cycle_graph(Rng& rng, std::size_t n, bool coherent) {
    const auto label = permutation(rng, n);
    const std::size_t s = uniform(rng, 3, n);
    std::vector<ArcPhi> arcs;
    for (std::size_t i = 0; i < s; ++i) {
        std::size_t a = label[i], b = label[(i + 1) % s];
        if (!coherent && coin(rng)) std::swap(a, b);
        arcs.push_back({a, b, nonzero(rng)});
    }
    if (coherent && coin(rng))
        for (auto& a : arcs) std::swap(a.from, a.to);
    for (std::size_t v = s; v < n; ++v) {
        std::size_t a = label[v], b = label[uniform(rng, 0, v - 1)];
        if (coin(rng)) std::swap(a, b);
        arcs.push_back({a, b, nonzero(rng)});
    }
    std::shuffle(arcs.begin(), arcs.end(), rng);
    return OneCycleGraph(n, std::move(arcs));
}

/// k linearly independent vectors in Q^n (k <= n), by rejection.
inline std::vector<Vector> independent_vectors(Rng& rng, std::size_t n, std::size_t k) {
    while (true) {
        std::vector<Vector> vs;
        for (std::size_t i = 0; i < k; ++i) vs.push_back(vector(rng, n));
        if (k == 0 || rank(Matrix::from_rows(vs)) == k) return vs;
    }
}

}  // namespace rankone::random
