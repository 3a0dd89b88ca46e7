#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rankone/exact/polynomial.hpp"
#include "rankone/rank1.hpp"

namespace rankone {

/// Directed edge tail -> head on the index set 0..N-1.
using DEdge = std::pair<std::size_t, std::size_t>;

/// Directed graph with in- and out-degree at most 1 (a partial injection,
/// loops allowed). Components are oriented chains and oriented cycles.
/// Edges are kept sorted by (tail, head).
class Doomb {
public:
    /// A maximal oriented chain or cycle, listed along its orientation. A chain
    /// of m edges lists m+1 vertices; a cycle of m edges lists its m vertices
    /// starting from the smallest. Isolated vertices are not components.
    struct Component {
        std::vector<std::size_t> vertices;
        bool cycle = false;
    };

    Doomb() = default;
    Doomb(std::size_t vertex_count, std::vector<DEdge> edges) : n_(vertex_count), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        std::vector<bool> out(n_, false), in(n_, false);
        for (const auto& [a, b] : edges_) {
            if (a >= n_ || b >= n_) throw validation_error("DOOMB edge outside vertex range");
            if (out[a] || in[b])
                throw validation_error("not a DOOMB: vertex with two outgoing or two incoming edges");
            out[a] = in[b] = true;
        }
    }

    [[nodiscard]] std::size_t vertex_count() const { return n_; }
    [[nodiscard]] std::size_t size() const { return edges_.size(); }
    [[nodiscard]] const std::vector<DEdge>& edges() const { return edges_; }

    [[nodiscard]] std::vector<Component> components() const {
        constexpr std::size_t none = static_cast<std::size_t>(-1);
        std::vector<std::size_t> next(n_, none), prev(n_, none);
        for (const auto& [a, b] : edges_) {
            next[a] = b;
            prev[b] = a;
        }
        std::vector<bool> seen(n_, false);
        std::vector<Component> comps;
        for (std::size_t v = 0; v < n_; ++v) {
            if (seen[v] || next[v] == none || prev[v] != none) continue;
            Component c;
            for (std::size_t x = v; x != none; x = next[x]) {
                c.vertices.push_back(x);
                seen[x] = true;
            }
            comps.push_back(std::move(c));
        }
        for (std::size_t v = 0; v < n_; ++v) {
            if (seen[v] || next[v] == none) continue;
            Component c{{}, true};
            std::size_t x = v;
            do {
                c.vertices.push_back(x);
                seen[x] = true;
                x = next[x];
            } while (x != v);
            comps.push_back(std::move(c));
        }
        std::sort(comps.begin(), comps.end(),
                  [](const Component& a, const Component& b) { return a.vertices.front() < b.vertices.front(); });
        return comps;
    }

    friend bool operator==(const Doomb& a, const Doomb& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<DEdge> edges_;
};

/// W(a, b): total weight of the words of P that contract to a path from tail a to head b.
using WeightTable = Matrix;

/// Path weights. The word (w1..ws) contributes coeff * prod <alpha_{w_r}, e_{w_{r+1}}>
/// to W(ws, w1): the operator product e_{w1} alpha_{ws}^T maps along alpha_{ws} onto e_{w1}.
inline WeightTable weight_table(const RankOneSystem& sys, const NCPoly& p) {
    if (p.alphabet_size() != sys.N()) throw dimension_error("weight_table: alphabet does not match family size");
    WeightTable w(sys.N(), sys.N());
    for (const auto& [word, c] : p.terms()) w(word.back(), word.front()) += c * word_scalar(sys, word);
    return w;
}

/// Edges with nonzero weight, in lexicographic order.
inline std::vector<DEdge> support(const WeightTable& w) {
    std::vector<DEdge> s;
    for (std::size_t a = 0; a < w.rows(); ++a)
        for (std::size_t b = 0; b < w.cols(); ++b)
            if (!w(a, b).is_zero()) s.emplace_back(a, b);
    return s;
}

inline std::vector<DEdge> all_edges(std::size_t n) {
    std::vector<DEdge> s;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s.emplace_back(a, b);
    return s;
}

/// Visits every DOOMB on 0..N-1 with exactly k edges drawn from `allowed`
/// (lexicographic order), depth first. The visitor sees the edge list in
/// canonical order.
inline void for_each_doomb(std::size_t n, std::size_t k, std::vector<DEdge> allowed,
                           const std::function<void(const std::vector<DEdge>&)>& visit) {
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    std::vector<bool> out(n, false), in(n, false);
    std::vector<DEdge> chosen;
    chosen.reserve(k);
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (chosen.size() == k) {
            visit(chosen);
            return;
        }
        if (allowed.size() - start < k - chosen.size()) return;
        for (std::size_t i = start; i < allowed.size(); ++i) {
            const auto [a, b] = allowed[i];
            if (out[a] || in[b]) continue;
            out[a] = in[b] = true;
            chosen.push_back(allowed[i]);
            rec(i + 1);
            chosen.pop_back();
            out[a] = in[b] = false;
        }
    };
    if (k <= n) rec(0);
}

inline std::vector<Doomb> enumerate_doombs(std::size_t n, std::size_t k, const std::vector<DEdge>& allowed) {
    std::vector<Doomb> out;
    for_each_doomb(n, k, allowed, [&](const std::vector<DEdge>& e) { out.emplace_back(n, e); });
    return out;
}

inline std::vector<Doomb> enumerate_doombs(std::size_t n, std::size_t k) { return enumerate_doombs(n, k, all_edges(n)); }

inline Rational doomb_weight(const std::vector<DEdge>& edges, const WeightTable& w) {
    Rational r(1);
    for (const auto& [a, b] : edges) r *= w.at(a, b);
    return r;
}
inline Rational doomb_weight(const Doomb& g, const WeightTable& w) { return doomb_weight(g.edges(), w); }

/// det(<alpha_{tail(d1)}, e_{head(d2)}>) over the edges d1, d2.
inline Rational edge_gram_det(const std::vector<DEdge>& edges, const RankOneSystem& sys) {
    Matrix g(edges.size(), edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = 0; j < edges.size(); ++j) g(i, j) = sys.alpha_e(edges[i].first, edges[j].second);
    return det(g);
}
inline Rational edge_gram_det(const Doomb& g, const RankOneSystem& sys) { return edge_gram_det(g.edges(), sys); }

/// One summand of the combinatorial mu_k.
struct DoombTerm {
    Doomb graph;
    Rational weight;
    Rational gram_det;
};

/// mu_k as the sum over k-edge DOOMBs of weight * edge-Gram determinant.
/// With prune set, only edges of nonzero weight are enumerated.
inline Rational mu_combinatorial(const RankOneSystem& sys, const NCPoly& p, std::size_t k, bool prune = true,
                                 std::vector<DoombTerm>* audit = nullptr) {
    const WeightTable w = weight_table(sys, p);
    Rational total;
    for_each_doomb(sys.N(), k, prune ? support(w) : all_edges(sys.N()), [&](const std::vector<DEdge>& e) {
        const Rational wt = doomb_weight(e, w);
        const Rational gd = wt.is_zero() ? Rational(0) : edge_gram_det(e, sys);
        total += wt * gd;
        if (audit) audit->push_back({Doomb(sys.N(), e), wt, gd});
    });
    return total;
}

/// sum_k (-1)^k mu_k t^{n-k} with mu_k from mu_combinatorial.
inline Polynomial charpoly_combinatorial(const RankOneSystem& sys, const NCPoly& p) {
    std::vector<Rational> mu;
    for (std::size_t k = 0; k <= sys.n(); ++k) mu.push_back(mu_combinatorial(sys, p, k));
    return poly_from_mu(mu);
}

}  // namespace rankone
