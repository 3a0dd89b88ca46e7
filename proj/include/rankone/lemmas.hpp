#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rankone/exact/polynomial.hpp"

namespace rankone {

/// Directed edge from -> to carrying phi_{from,to}; phi_{to,from} is its inverse.
struct ArcPhi {
    std::size_t from = 0, to = 0;
    Rational phi{1};
};

/// alpha_ij = u_i - phi_ij u_j.
inline Vector alpha_vector(std::size_t n, const ArcPhi& a) {
    Vector v = unit_vector(n, a.from);
    v.at(a.to) -= a.phi;
    return v;
}

/// e_ij = u_i - phi_ji u_j.
inline Vector e_vector(std::size_t n, const ArcPhi& a) {
    Vector v = unit_vector(n, a.from);
    v.at(a.to) -= a.phi.inverse();
    return v;
}

inline std::vector<Vector> alpha_family(std::size_t n, const std::vector<ArcPhi>& arcs) {
    std::vector<Vector> out;
    for (const auto& a : arcs) out.push_back(alpha_vector(n, a));
    return out;
}

inline std::vector<Vector> e_family(std::size_t n, const std::vector<ArcPhi>& arcs) {
    std::vector<Vector> out;
    for (const auto& a : arcs) out.push_back(e_vector(n, a));
    return out;
}

/// Gram matrices P = G(A, A), Q = G(A, E), R = G(E, E) of a directed graph.
struct PQR {
    Matrix P, Q, R;
};

inline PQR pqr_matrices(std::size_t n, const std::vector<ArcPhi>& arcs) {
    const auto a = alpha_family(n, arcs), e = e_family(n, arcs);
    return {gram(a, a), gram(a, e), gram(e, e)};
}

/// Incidence coefficient of vertex x in the alpha (or e) vector of an arc:
/// 1 at the tail, -phi (or -1/phi) at the head, 0 elsewhere.
inline Rational psi(const ArcPhi& a, std::size_t x, bool alpha) {
    if (x == a.from) return Rational(1);
    if (x == a.to) return -(alpha ? a.phi : a.phi.inverse());
    return Rational(0);
}

/// Gram matrix assembled from the incidence rules: zero for disjoint arcs,
/// otherwise the sum over shared endpoints of the psi products.
inline Matrix psi_gram(const std::vector<ArcPhi>& arcs, bool left_alpha, bool right_alpha) {
    Matrix g(arcs.size(), arcs.size());
    for (std::size_t s = 0; s < arcs.size(); ++s)
        for (std::size_t t = 0; t < arcs.size(); ++t) {
            const std::set<std::size_t> vs{arcs[s].from, arcs[s].to};
            for (auto x : vs)
                if (x == arcs[t].from || x == arcs[t].to) g(s, t) += psi(arcs[s], x, left_alpha) * psi(arcs[t], x, right_alpha);
        }
    return g;
}

namespace detail {

/// Adjacency lists of an arc set: (neighbour, arc index).
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(std::size_t n, const std::vector<ArcPhi>& arcs) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].from >= n || arcs[i].to >= n) throw validation_error("arc endpoint outside the vertex range");
        if (arcs[i].from == arcs[i].to) throw validation_error("loops are not allowed");
        if (arcs[i].phi.is_zero()) throw validation_error("connection values must be nonzero");
        adj[arcs[i].from].emplace_back(arcs[i].to, i);
        adj[arcs[i].to].emplace_back(arcs[i].from, i);
    }
    return adj;
}

/// phi of arc i traversed starting at x.
inline Rational phi_from(const ArcPhi& a, std::size_t x) { return x == a.from ? a.phi : a.phi.inverse(); }

/// BFS from `root`: parent arc of every reached vertex (npos for the root).
inline std::vector<std::size_t> bfs_parents(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj,
                                            const std::vector<std::size_t>& roots, std::vector<std::size_t>& order) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent_arc(adj.size(), npos);
    std::vector<bool> seen(adj.size(), false);
    for (auto r : roots) {
        seen[r] = true;
        order.push_back(r);
    }
    for (std::size_t h = 0; h < order.size(); ++h)
        for (const auto& [w, arc] : adj[order[h]])
            if (!seen[w]) {
                seen[w] = true;
                parent_arc[w] = arc;
                order.push_back(w);
            }
    return parent_arc;
}

}  // namespace detail

/// Tree on vertices 0..n-1 with arbitrarily directed arcs and a root.
class RootedTree {
public:
    RootedTree(std::size_t n, std::vector<ArcPhi> arcs, std::size_t root) : n_(n), arcs_(std::move(arcs)), root_(root) {
        if (n_ == 0 || root_ >= n_) throw validation_error("tree root outside the vertex range");
        if (arcs_.size() + 1 != n_) throw validation_error("a tree on n vertices has n-1 edges");
        const auto adj = detail::adjacency(n_, arcs_);
        order_.clear();
        parent_arc_ = detail::bfs_parents(adj, {root_}, order_);
        if (order_.size() != n_) throw validation_error("tree is disconnected");
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::size_t root() const { return root_; }
    [[nodiscard]] const std::vector<ArcPhi>& arcs() const { return arcs_; }

    /// Parallel transport from u to the root: product of phi along the path.
    [[nodiscard]] Rational phi_to_root(std::size_t u) const {
        Rational p(1);
        while (u != root_) {
            const auto& a = arcs_[parent_arc_[u]];
            p *= detail::phi_from(a, u);
            u = a.from == u ? a.to : a.from;
        }
        return p;
    }
    [[nodiscard]] Rational phi_from_root(std::size_t u) const { return phi_to_root(u).inverse(); }

    /// True if the arc points from the parent to the child.
    [[nodiscard]] bool directed_away(std::size_t arc) const {
        const auto& a = arcs_.at(arc);
        return parent_arc_[a.to] == arc;
    }

private:
    std::size_t n_;
    std::vector<ArcPhi> arcs_;
    std::size_t root_;
    std::vector<std::size_t> parent_arc_, order_;
};

/// Definitional value next to its closed form.
struct Identity {
    Rational computed;
    Rational closed_form;
    [[nodiscard]] bool holds() const { return computed == closed_form; }
};

/// det P = prod_{arcs away from root} phi^2 * sum_u phi(u -> root)^2.
inline Identity det_P_tree(const RootedTree& t) {
    const auto a = alpha_family(t.n(), t.arcs());
    Rational prod(1), sum;
    for (std::size_t i = 0; i < t.arcs().size(); ++i)
        if (t.directed_away(i)) prod *= t.arcs()[i].phi * t.arcs()[i].phi;
    for (std::size_t u = 0; u < t.n(); ++u) sum += pow(t.phi_to_root(u), 2);
    return {det(gram(a, a)), prod * sum};
}

/// det R = prod_{arcs away from root} phi^-2 * sum_u phi(u -> root)^-2.
inline Identity det_R_tree(const RootedTree& t) {
    const auto e = e_family(t.n(), t.arcs());
    Rational prod(1), sum;
    for (std::size_t i = 0; i < t.arcs().size(); ++i)
        if (t.directed_away(i)) prod *= pow(t.arcs()[i].phi, -2);
    for (std::size_t u = 0; u < t.n(); ++u) sum += pow(t.phi_to_root(u), -2);
    return {det(gram(e, e)), prod * sum};
}

/// det Q = m + 1 for a tree with m edges.
inline Identity det_Q_tree(const RootedTree& t) {
    return {det(gram(alpha_family(t.n(), t.arcs()), e_family(t.n(), t.arcs()))),
            Rational(static_cast<long>(t.arcs().size() + 1))};
}

/// Connected graph on n vertices with n arcs, hence exactly one cycle.
class OneCycleGraph {
public:
    OneCycleGraph(std::size_t n, std::vector<ArcPhi> arcs) : n_(n), arcs_(std::move(arcs)) {
        if (n_ < 2 || arcs_.size() != n_) throw validation_error("a one-cycle graph on n vertices has n edges");
        const auto adj = detail::adjacency(n_, arcs_);
        // Peel leaves; what survives is the cycle.
        std::vector<std::size_t> deg(n_);
        for (std::size_t v = 0; v < n_; ++v) deg[v] = adj[v].size();
        std::vector<bool> removed(n_, false);
        std::vector<std::size_t> stack;
        for (std::size_t v = 0; v < n_; ++v)
            if (deg[v] <= 1) stack.push_back(v);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            if (removed[v]) continue;
            removed[v] = true;
            for (const auto& [w, arc] : adj[v])
                if (!removed[w] && --deg[w] == 1) stack.push_back(w);
        }
        std::size_t start = n_;
        for (std::size_t v = 0; v < n_; ++v)
            if (!removed[v]) {
                start = v;
                break;
            }
        if (start == n_) throw validation_error("graph has no cycle");
        // Walk the cycle from its smallest vertex.
        std::vector<bool> used(arcs_.size(), false);
        std::size_t cur = start;
        do {
            std::size_t next_arc = arcs_.size();
            for (const auto& [w, arc] : adj[cur])
                if (!removed[w] && !used[arc]) {
                    next_arc = arc;
                    break;
                }
            if (next_arc == arcs_.size()) throw validation_error("malformed cycle");
            used[next_arc] = true;
            cycle_vertices_.push_back(cur);
            cycle_arcs_.push_back(next_arc);
            const auto& a = arcs_[next_arc];
            cur = a.from == cur ? a.to : a.from;
        } while (cur != start);
        std::vector<std::size_t> order;
        std::vector<std::size_t> roots(cycle_vertices_);
        parent_arc_ = detail::bfs_parents(adj, roots, order);
        if (order.size() != n_) throw validation_error("one-cycle graph is disconnected");
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] const std::vector<ArcPhi>& arcs() const { return arcs_; }
    [[nodiscard]] const std::vector<std::size_t>& cycle_vertices() const { return cycle_vertices_; }
    [[nodiscard]] const std::vector<std::size_t>& cycle_arcs() const { return cycle_arcs_; }

    /// Holonomy along the traversal order of the cycle.
    [[nodiscard]] Rational holonomy() const {
        Rational w(1);
        for (std::size_t i = 0; i < cycle_arcs_.size(); ++i)
            w *= detail::phi_from(arcs_[cycle_arcs_[i]], cycle_vertices_[i]);
        return w;
    }
    /// True if every cycle arc points along one direction of travel.
    [[nodiscard]] bool coherent() const {
        std::size_t forward = 0;
        for (std::size_t i = 0; i < cycle_arcs_.size(); ++i) forward += arcs_[cycle_arcs_[i]].from == cycle_vertices_[i];
        return forward == 0 || forward == cycle_arcs_.size();
    }
    /// True if the antler arc points away from the cycle.
    [[nodiscard]] bool antler_away(std::size_t arc) const {
        return !on_cycle(arc) && parent_arc_[arcs_.at(arc).to] == arc;
    }
    [[nodiscard]] bool on_cycle(std::size_t arc) const {
        for (auto c : cycle_arcs_)
            if (c == arc) return true;
        return false;
    }

private:
    std::size_t n_;
    std::vector<ArcPhi> arcs_;
    std::vector<std::size_t> cycle_vertices_, cycle_arcs_, parent_arc_;
};

/// Determinants of P, Q, R for a one-cycle graph beside their closed forms
/// (1-w)^2 prod phi^2, (1-1/w)^2 prod phi^-2 and (1-w)(1-1/w), products over
/// antler arcs pointing away from the cycle. The P and R forms assume a
/// coherently oriented cycle (`coherent`); the Q form holds for any orientation.
struct PQRCycle {
    Identity P, R, Q;
    Rational holonomy;
    bool coherent = false;
};

inline PQRCycle pqr_cycle(const OneCycleGraph& g) {
    const PQR m = pqr_matrices(g.n(), g.arcs());
    Rational w = g.holonomy();
    // Closed forms read w along the arc direction of a coherent cycle.
    if (g.coherent() && g.arcs()[g.cycle_arcs().front()].from != g.cycle_vertices().front()) w = w.inverse();
    Rational away(1);
    for (std::size_t i = 0; i < g.arcs().size(); ++i)
        if (g.antler_away(i)) away *= g.arcs()[i].phi * g.arcs()[i].phi;
    const Rational one(1);
    PQRCycle r;
    r.holonomy = w;
    r.coherent = g.coherent();
    r.P = {det(m.P), pow(one - w, 2) * away};
    r.R = {det(m.R), pow(one - w.inverse(), 2) * away.inverse()};
    r.Q = {det(m.Q), (one - w) * (one - w.inverse())};
    return r;
}

/// det G(V, V) beside the sum of squared maximal minors of the coordinate matrix.
inline Identity gram_minor_identity(const std::vector<Vector>& vectors) {
    const std::size_t k = vectors.size();
    const std::size_t n = k ? vectors.front().size() : 0;
    const Matrix coords = Matrix::from_rows(vectors);
    std::vector<std::size_t> rows(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = i;
    Rational sum;
    for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) { sum += pow(det(coords.select(rows, cols)), 2); });
    return {det(gram(vectors, vectors)), sum};
}

/// Linear subspace of Q^n given by independent basis vectors.
class Subspace {
public:
    Subspace(std::size_t ambient, std::vector<Vector> basis) : n_(ambient), basis_(std::move(basis)) {
        for (const auto& v : basis_)
            if (v.size() != n_) throw dimension_error("basis vector outside the ambient space");
        if (!basis_.empty() && rank(Matrix::from_rows(basis_)) != basis_.size())
            throw validation_error("subspace basis is linearly dependent");
    }
    [[nodiscard]] std::size_t ambient() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return basis_.size(); }
    [[nodiscard]] const std::vector<Vector>& basis() const { return basis_; }

    /// Exact orthogonal complement: the kernel of the basis matrix.
    [[nodiscard]] Subspace complement() const {
        if (basis_.empty()) {
            std::vector<Vector> all;
            for (std::size_t i = 0; i < n_; ++i) all.push_back(unit_vector(n_, i));
            return Subspace(n_, std::move(all));
        }
        return Subspace(n_, nullspace(Matrix::from_rows(basis_)));
    }

private:
    std::size_t n_;
    std::vector<Vector> basis_;
};

/// det G(M,X)^2 / (det G(M,M) det G(X,X)).
inline Rational angle(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient() || a.dim() != b.dim()) throw dimension_error("angle needs subspaces of equal dimension");
    const Rational num = pow(det(gram(a.basis(), b.basis())), 2);
    return num / (det(gram(a.basis(), a.basis())) * det(gram(b.basis(), b.basis())));
}

/// (angle(a, b), angle of the orthogonal complements).
inline std::pair<Rational, Rational> orth_complement_angle_duality(const Subspace& a, const Subspace& b) {
    return {angle(a, b), angle(a.complement(), b.complement())};
}

/// b = sum_u phi(u -> root) u and f = sum_u phi(root -> u) u.
struct ComplementVectors {
    Vector b, f;
};

inline ComplementVectors tree_complement_vectors(const RootedTree& t) {
    ComplementVectors r{Vector(t.n()), Vector(t.n())};
    for (std::size_t u = 0; u < t.n(); ++u) {
        r.b[u] = t.phi_to_root(u);
        r.f[u] = t.phi_from_root(u);
    }
    return r;
}

}  // namespace rankone
