#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "rankone/exact/polynomial.hpp"
#include "rankone/ncpoly.hpp"
#include "rankone/rank1.hpp"

namespace rankone {

/// Undirected edge {u, v} with connection phi(u -> v) = phi, phi(v -> u) = 1/phi.
/// `layer` separates parallel edge classes: 0 for plain and "-" edges, 1 for "+" edges.
struct BundleEdge {
    std::size_t u = 0, v = 0;
    Rational phi{1};
    Rational c{1};
    int layer = 0;

    /// Connection value in the direction from -> other endpoint.
    [[nodiscard]] Rational phi_from(std::size_t from) const { return from == u ? phi : phi.inverse(); }
    [[nodiscard]] std::size_t other(std::size_t x) const { return x == u ? v : u; }
};

/// Line bundle with connection on a graph with vertices 0..n-1: no loops, and
/// at most one edge per vertex pair and layer.
class LineBundle {
public:
    LineBundle() = default;
    LineBundle(std::size_t n, std::vector<BundleEdge> edges) : n_(n), edges_(std::move(edges)) {
        std::set<std::tuple<std::size_t, std::size_t, int>> seen;
        for (const auto& e : edges_) {
            if (e.u >= n_ || e.v >= n_) throw validation_error("bundle edge endpoint outside 1.." + std::to_string(n_));
            if (e.u == e.v) throw validation_error("bundle edges cannot be loops");
            if (e.phi.is_zero()) throw validation_error("connection values must be nonzero");
            if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v), e.layer}).second)
                throw validation_error("multiple edges between " + std::to_string(e.u + 1) + " and " +
                                       std::to_string(e.v + 1));
        }
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] const std::vector<BundleEdge>& edges() const { return edges_; }
    [[nodiscard]] const BundleEdge& edge(std::size_t id) const { return edges_.at(id); }

    /// Ids of edges joining p and q.
    [[nodiscard]] std::vector<std::size_t> edges_between(std::size_t p, std::size_t q) const {
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if ((edges_[i].u == p && edges_[i].v == q) || (edges_[i].u == q && edges_[i].v == p)) ids.push_back(i);
        return ids;
    }

private:
    std::size_t n_ = 0;
    std::vector<BundleEdge> edges_;
};

/// M(v)_i = sum_j c_ij (v_i - phi_ji v_j), assembled entrywise.
inline Matrix laplacian(const LineBundle& b) {
    Matrix m(b.n(), b.n());
    for (const auto& e : b.edges()) {
        m(e.u, e.u) += e.c;
        m(e.v, e.v) += e.c;
        m(e.u, e.v) -= e.c * e.phi.inverse();
        m(e.v, e.u) -= e.c * e.phi;
    }
    return m;
}

/// Rank-one system of the bundle Laplacian, one member per edge {i,j} = (u,v):
/// e_ij = u_i - phi_ij u_j and alpha_ij = u_i - phi_ji u_j.
inline RankOneSystem pair_system(const LineBundle& b) {
    std::vector<Vector> e, alpha;
    for (const auto& ed : b.edges()) {
        Vector x = unit_vector(b.n(), ed.u), y = unit_vector(b.n(), ed.u);
        x[ed.v] -= ed.phi;
        y[ed.v] -= ed.phi.inverse();
        e.push_back(std::move(x));
        alpha.push_back(std::move(y));
    }
    return RankOneSystem(b.n(), std::move(e), std::move(alpha));
}

/// P = sum_e c_e x_e over the edge alphabet.
inline NCPoly laplacian_poly(const LineBundle& b) {
    std::map<std::size_t, Rational> c;
    for (std::size_t i = 0; i < b.edge_count(); ++i) c[i] = b.edge(i).c;
    return linear_poly(b.edge_count(), c);
}

/// Product of phi along a closed walk given by its edges, starting at `start`.
inline Rational holonomy_along(const LineBundle& b, std::size_t start, const std::vector<std::size_t>& edge_ids) {
    Rational w(1);
    std::size_t cur = start;
    for (auto id : edge_ids) {
        const auto& e = b.edge(id);
        if (e.u != cur && e.v != cur) throw validation_error("edge sequence is not a walk");
        w *= e.phi_from(cur);
        cur = e.other(cur);
    }
    if (cur != start) throw validation_error("edge sequence is not closed");
    return w;
}

/// Holonomy of the closed walk p_0 p_1 ... p_{s-1} (p_0): the product of phi(p_i -> p_{i+1}).
/// Each step must be joined by exactly one edge.
inline Rational holonomy(const LineBundle& b, const std::vector<std::size_t>& cycle) {
    if (cycle.empty()) throw validation_error("empty cycle");
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto p = cycle[i], q = cycle[(i + 1) % cycle.size()];
        const auto between = b.edges_between(p, q);
        if (between.size() != 1)
            throw validation_error("no unique edge between " + std::to_string(p + 1) + " and " + std::to_string(q + 1));
        ids.push_back(between.front());
    }
    return holonomy_along(b, cycle.front(), ids);
}

/// Subgraph whose components are trees or graphs with exactly one cycle.
struct MixedForest {
    struct Component {
        std::vector<std::size_t> vertices;
        std::vector<std::size_t> edges;
        bool cycle = false;
        /// Cycle traversal: starts at the smallest cycle vertex, heads to its
        /// smallest cycle neighbour; `cycle_edges` lists the edges in that order.
        std::vector<std::size_t> cycle_vertices;
        std::vector<std::size_t> cycle_edges;
        Rational holonomy{1};
    };
    std::size_t vertex_count = 0;
    std::vector<std::size_t> edges;
    std::vector<Component> components;

    [[nodiscard]] std::size_t cycle_count() const {
        return static_cast<std::size_t>(
            std::count_if(components.begin(), components.end(), [](const Component& c) { return c.cycle; }));
    }
};

namespace detail {

/// Union-find with undo, tracking whether each class already holds a cycle.
class RollbackDsu {
public:
    explicit RollbackDsu(std::size_t n) : parent_(n), size_(n, 1), cyc_(n, false) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::size_t find(std::size_t x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }
    /// Adds an edge unless it would create a second cycle in a class.
    bool add(std::size_t a, std::size_t b, bool allow_cycles) {
        std::size_t ra = find(a), rb = find(b);
        if (ra == rb) {
            if (!allow_cycles || cyc_[ra]) return false;
            cyc_[ra] = true;
            log_.push_back({ra, ra, false});
            return true;
        }
        if (cyc_[ra] && cyc_[rb]) return false;
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        log_.push_back({ra, rb, cyc_[ra]});
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        cyc_[ra] = cyc_[ra] || cyc_[rb];
        return true;
    }
    void undo() {
        const auto s = log_.back();
        log_.pop_back();
        if (s.root == s.child) {
            cyc_[s.root] = false;
            return;
        }
        parent_[s.child] = s.child;
        size_[s.root] -= size_[s.child];
        cyc_[s.root] = s.root_cycle;
    }

private:
    struct Step {
        std::size_t root, child;
        bool root_cycle;
    };
    std::vector<std::size_t> parent_, size_;
    std::vector<bool> cyc_;
    std::vector<Step> log_;
};

}  // namespace detail

/// Splits an edge subset into tree and one-cycle components (vertices 0..n-1,
/// isolated vertices are single-vertex trees). Returns nullopt if some
/// component has more than one cycle.
inline std::optional<MixedForest> analyze_mixed_forest(const LineBundle& b, const std::vector<std::size_t>& edge_ids) {
    const std::size_t n = b.n();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto id : edge_ids) parent[find(b.edge(id).u)] = find(b.edge(id).v);
    std::map<std::size_t, MixedForest::Component> by_root;
    for (std::size_t v = 0; v < n; ++v) by_root[find(v)].vertices.push_back(v);
    for (auto id : edge_ids) by_root[find(b.edge(id).u)].edges.push_back(id);

    MixedForest f;
    f.vertex_count = n;
    f.edges = edge_ids;
    for (auto& [root, comp] : by_root) {
        if (comp.edges.size() > comp.vertices.size()) return std::nullopt;
        if (comp.edges.size() == comp.vertices.size()) {
            comp.cycle = true;
            // Peel leaves until only the cycle remains.
            std::map<std::size_t, std::size_t> deg;
            for (auto id : comp.edges) {
                ++deg[b.edge(id).u];
                ++deg[b.edge(id).v];
            }
            std::set<std::size_t> live_edges(comp.edges.begin(), comp.edges.end());
            bool changed = true;
            while (changed) {
                changed = false;
                for (auto it = live_edges.begin(); it != live_edges.end();) {
                    const auto& e = b.edge(*it);
                    if (deg[e.u] == 1 || deg[e.v] == 1) {
                        --deg[e.u];
                        --deg[e.v];
                        it = live_edges.erase(it);
                        changed = true;
                    } else {
                        ++it;
                    }
                }
            }
            std::size_t start = n;
            for (auto id : live_edges) start = std::min({start, b.edge(id).u, b.edge(id).v});
            std::size_t cur = start;
            std::set<std::size_t> used;
            while (true) {
                std::size_t best = static_cast<std::size_t>(-1), best_to = n;
                for (auto id : live_edges) {
                    if (used.count(id)) continue;
                    const auto& e = b.edge(id);
                    if (e.u != cur && e.v != cur) continue;
                    const std::size_t to = e.other(cur);
                    if (to < best_to || (to == best_to && id < best)) {
                        best = id;
                        best_to = to;
                    }
                }
                if (best == static_cast<std::size_t>(-1)) break;
                used.insert(best);
                comp.cycle_vertices.push_back(cur);
                comp.cycle_edges.push_back(best);
                cur = best_to;
                if (cur == start) break;
            }
            comp.holonomy = holonomy_along(b, start, comp.cycle_edges);
        }
        f.components.push_back(std::move(comp));
    }
    return f;
}

/// Visits every mixed forest with exactly k edges (plain forests only when
/// `forests_only`). Subsets are generated in lexicographic order of edge ids.
inline void for_each_mixed_forest(const LineBundle& b, std::size_t k, const std::function<void(const MixedForest&)>& visit,
                                  bool forests_only = false) {
    const std::size_t m = b.edge_count();
    if (k > m) return;
    detail::RollbackDsu dsu(b.n());
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (chosen.size() == k) {
            if (auto f = analyze_mixed_forest(b, chosen)) visit(*f);
            return;
        }
        for (std::size_t i = start; i + (k - chosen.size()) <= m; ++i) {
            if (!dsu.add(b.edge(i).u, b.edge(i).v, !forests_only)) continue;
            chosen.push_back(i);
            rec(i + 1);
            chosen.pop_back();
            dsu.undo();
        }
    };
    rec(0);
}

inline std::vector<MixedForest> enumerate_mixed_forests(const LineBundle& b, std::size_t k, bool forests_only = false) {
    std::vector<MixedForest> out;
    for_each_mixed_forest(b, k, [&](const MixedForest& f) { out.push_back(f); }, forests_only);
    return out;
}

/// prod c_e * prod over trees (m_i + 1) * prod over cycles (1 - w)(1 - 1/w).
inline Rational forman_term(const LineBundle& b, const MixedForest& f) {
    Rational t(1);
    for (auto id : f.edges) t *= b.edge(id).c;
    for (const auto& comp : f.components) {
        if (comp.cycle)
            t *= (Rational(1) - comp.holonomy) * (Rational(1) - comp.holonomy.inverse());
        else
            t *= Rational(static_cast<long>(comp.edges.size() + 1));
    }
    return t;
}

inline Rational forman_mu(const LineBundle& b, std::size_t k) {
    Rational total;
    for_each_mixed_forest(b, k, [&](const MixedForest& f) { total += forman_term(b, f); });
    return total;
}

namespace detail {
inline void require_symmetric_weights(const Matrix& c) {
    c.require_square("edge weights");
    for (std::size_t i = 0; i < c.rows(); ++i) {
        if (!c(i, i).is_zero()) throw validation_error("edge weights must vanish on the diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if (c(i, j) != c(j, i)) throw validation_error("edge weights must be symmetric");
    }
}
}  // namespace detail

/// Graph with trivial connection (phi = 1) on every pair with nonzero weight.
inline LineBundle trivial_bundle(const Matrix& c) {
    detail::require_symmetric_weights(c);
    std::vector<BundleEdge> edges;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = i + 1; j < c.cols(); ++j)
            if (!c(i, j).is_zero()) edges.push_back({i, j, Rational(1), c(i, j), 0});
    return LineBundle(c.rows(), std::move(edges));
}

/// Sum over k-edge forests of prod c * prod (m_i + 1).
inline Rational mtt_mu(const Matrix& c, std::size_t k) {
    const LineBundle b = trivial_bundle(c);
    Rational total;
    for_each_mixed_forest(
        b, k,
        [&](const MixedForest& f) {
            Rational t(1);
            for (auto id : f.edges) t *= b.edge(id).c;
            for (const auto& comp : f.components) t *= Rational(static_cast<long>(comp.edges.size() + 1));
            total += t;
        },
        true);
    return total;
}

/// Determinant of the weighted Laplacian with the last row and column removed.
inline Rational kirchhoff_tree_count(const Matrix& c) {
    const Matrix l = laplacian(trivial_bundle(c));
    if (l.rows() <= 1) return Rational(1);
    std::vector<std::size_t> keep(l.rows() - 1);
    std::iota(keep.begin(), keep.end(), 0);
    return det(l.select(keep, keep));
}

/// Doubled-edge bundle: for each pair p<q a "-" edge (phi = 1, weight c_minus)
/// and a "+" edge (phi = -1, weight c_plus, layer 1). Zero-weight edges are
/// kept only when `keep_zero` is set.
inline LineBundle mttd_bundle(const Matrix& c_minus, const Matrix& c_plus, bool keep_zero = false) {
    detail::require_symmetric_weights(c_minus);
    detail::require_symmetric_weights(c_plus);
    if (c_minus.rows() != c_plus.rows()) throw dimension_error("mttd weight tables differ in size");
    std::vector<BundleEdge> edges;
    for (std::size_t i = 0; i < c_minus.rows(); ++i)
        for (std::size_t j = i + 1; j < c_minus.rows(); ++j) {
            if (keep_zero || !c_minus(i, j).is_zero()) edges.push_back({i, j, Rational(1), c_minus(i, j), 0});
            if (keep_zero || !c_plus(i, j).is_zero()) edges.push_back({i, j, Rational(-1), c_plus(i, j), 1});
        }
    return LineBundle(c_minus.rows(), std::move(edges));
}

/// True if every cycle of the forest holds an odd number of "+" edges.
inline bool odd_plus_cycles(const LineBundle& b, const MixedForest& f) {
    for (const auto& comp : f.components) {
        if (!comp.cycle) continue;
        std::size_t plus = 0;
        for (auto id : comp.cycle_edges) plus += b.edge(id).layer == 1 ? 1 : 0;
        if (plus % 2 == 0) return false;
    }
    return true;
}

/// Sum over mixed forests of the doubled graph whose cycles all hold an odd
/// number of "+" edges, of prod c * prod (m_i + 1) * 4^(number of cycles).
inline Rational mttd_mu(const Matrix& c_minus, const Matrix& c_plus, std::size_t k) {
    const LineBundle b = mttd_bundle(c_minus, c_plus);
    Rational total;
    for_each_mixed_forest(b, k, [&](const MixedForest& f) {
        if (!odd_plus_cycles(b, f)) return;
        Rational t(1);
        for (auto id : f.edges) t *= b.edge(id).c;
        for (const auto& comp : f.components) t *= comp.cycle ? Rational(4) : Rational(static_cast<long>(comp.edges.size() + 1));
        total += t;
    });
    return total;
}

/// Reflection sigma_pq swapping u_p and u_q.
inline Matrix reflection_sigma(std::size_t n, std::size_t p, std::size_t q) {
    Matrix s = Matrix::identity(n);
    s(p, p) = s(q, q) = 0;
    s(p, q) = s(q, p) = 1;
    return s;
}

/// Reflection tau_pq with u_p -> -u_q and u_q -> -u_p.
inline Matrix reflection_tau(std::size_t n, std::size_t p, std::size_t q) {
    Matrix t = Matrix::identity(n);
    t(p, p) = t(q, q) = 0;
    t(p, q) = t(q, p) = -1;
    return t;
}

/// sum_{p<q} c_minus (1 - sigma_pq) + c_plus (1 - tau_pq).
inline Matrix mttd_operator(const Matrix& c_minus, const Matrix& c_plus) {
    detail::require_symmetric_weights(c_minus);
    detail::require_symmetric_weights(c_plus);
    const std::size_t n = c_minus.rows();
    const Matrix id = Matrix::identity(n);
    Matrix m(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
            m.add_scaled(id - reflection_sigma(n, p, q), c_minus(p, q));
            m.add_scaled(id - reflection_tau(n, p, q), c_plus(p, q));
        }
    return m;
}

}  // namespace rankone
