#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rankone/bundle.hpp"
#include "rankone/doomb.hpp"
#include "rankone/ncpoly.hpp"
#include "rankone/pairs.hpp"
#include "rankone/rank1.hpp"
#include "rankone/skew_triple.hpp"

namespace rankone {

/// phi(i, j) for every ordered pair of 0..n-1, read from a bundle; pairs
/// without an edge get 1 and must not be touched by the coefficients.
inline Matrix phi_table(const LineBundle& b) {
    Matrix phi(b.n(), b.n());
    for (std::size_t i = 0; i < b.n(); ++i)
        for (std::size_t j = 0; j < b.n(); ++j) phi(i, j) = 1;
    for (const auto& e : b.edges()) {
        phi(e.u, e.v) = e.phi;
        phi(e.v, e.u) = e.phi.inverse();
    }
    return phi;
}

/// Rejects coefficients c(i,j,k) != 0 unless {i,j} and {i,k} are bundle edges.
inline void require_level2_support(const SkewTriple& c, const LineBundle& b) {
    if (c.n() != b.n()) throw dimension_error("skew triple and bundle have different vertex counts");
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : b.edges()) edges.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    auto has = [&](std::size_t x, std::size_t y) { return edges.count({std::min(x, y), std::max(x, y)}) > 0; };
    for (const auto& [key, v] : c.entries()) {
        const auto [i, j, k] = key;
        if (!has(i, j) || !has(i, k))
            throw validation_error("c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                   ") is nonzero on a pair that is not a bundle edge");
    }
}

/// Explicit level-2 operator:
/// M[a][b] = phi_ab sum_k (c_abk + c_bka) + sum_k c_kab phi_ak phi_kb, k != a,b; zero diagonal.
inline Matrix level2_laplacian(const SkewTriple& c, const LineBundle& b) {
    require_level2_support(c, b);
    const Matrix phi = phi_table(b);
    const std::size_t n = b.n();
    Matrix m(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb < n; ++bb) {
            if (a == bb) continue;
            Rational s;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == a || k == bb) continue;
                s += phi(a, bb) * (c(a, bb, k) + c(bb, k, a)) + c(k, a, bb) * phi(a, k) * phi(k, bb);
            }
            m(a, bb) = s;
        }
    return m;
}

/// Order [ij] in which each unordered pair enters the rank-one system.
/// flipped[p] selects (j, i) instead of (i, j), i < j.
struct BracketChoice {
    std::vector<bool> flipped;

    [[nodiscard]] std::pair<std::size_t, std::size_t> bracket(std::size_t n, std::size_t pair) const {
        auto [i, j] = pair_of(n, pair);
        if (pair < flipped.size() && flipped[pair]) std::swap(i, j);
        return {i, j};
    }
};

/// The rank-one system behind the level-2 operator, over the pair alphabet:
/// alpha_[ij] = u_i - phi_ij u_j and e_[ij] = u_i - phi_ji u_j.
struct Level2System {
    std::size_t n = 0;
    Matrix phi;
    BracketChoice brackets;
    RankOneSystem sys;
    NCPoly poly;
};

inline Level2System level2_pair_system(const SkewTriple& c, const LineBundle& b, const BracketChoice& brackets = {}) {
    require_level2_support(c, b);
    Level2System s;
    s.n = b.n();
    s.phi = phi_table(b);
    s.brackets = brackets;
    std::vector<Vector> e, alpha;
    for (std::size_t p = 0; p < pair_count(s.n); ++p) {
        const auto [i, j] = brackets.bracket(s.n, p);
        Vector a = unit_vector(s.n, i), x = unit_vector(s.n, i);
        a[j] -= s.phi(i, j);
        x[j] -= s.phi(j, i);
        alpha.push_back(std::move(a));
        e.push_back(std::move(x));
    }
    s.sys = RankOneSystem(s.n, std::move(e), std::move(alpha));
    s.poly = level2_poly(c);
    return s;
}

/// Oriented triangle for the DOOMB edge tail {apex, tail_other} -> head {apex, head_other}.
/// s1 is the tail pair, s2 the head pair, s3 = {tail_other, head_other} lies on the boundary.
struct Face {
    std::size_t tail_pair = 0, head_pair = 0;
    std::size_t apex = 0, tail_other = 0, head_other = 0;

    [[nodiscard]] std::pair<std::size_t, std::size_t> s1() const { return sorted(apex, tail_other); }
    [[nodiscard]] std::pair<std::size_t, std::size_t> s2() const { return sorted(apex, head_other); }
    [[nodiscard]] std::pair<std::size_t, std::size_t> s3() const { return sorted(tail_other, head_other); }

private:
    static std::pair<std::size_t, std::size_t> sorted(std::size_t a, std::size_t b) { return {std::min(a, b), std::max(a, b)}; }
};

/// Irreducible piece of a polyhedron: the faces of one DOOMB component in
/// orientation order. For chains, `initial` and `terminal` are the free
/// black sides (pair indices) at the two ends.
struct PolyComponent {
    std::vector<Face> faces;
    bool cycle = false;
    std::size_t initial = 0, terminal = 0;
};

struct Polyhedron2 {
    std::size_t n = 0;
    std::vector<PolyComponent> components;

    [[nodiscard]] std::size_t face_count() const {
        std::size_t f = 0;
        for (const auto& c : components) f += c.faces.size();
        return f;
    }
};

/// One triangle per DOOMB edge over the pair alphabet of 0..n-1. Throws
/// structural_error if an edge joins pairs that do not share exactly one index.
inline Polyhedron2 doomb_to_polyhedron(std::size_t n, const Doomb& g) {
    if (g.vertex_count() != pair_count(n)) throw dimension_error("DOOMB is not over the pair alphabet");
    Polyhedron2 h;
    h.n = n;
    auto face_of = [&](std::size_t tail, std::size_t head) {
        const auto [a, b] = pair_of(n, tail);
        const auto [x, y] = pair_of(n, head);
        const std::set<std::size_t> t{a, b}, s{x, y};
        std::vector<std::size_t> common;
        std::set_intersection(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(common));
        if (common.size() != 1)
            throw structural_error("DOOMB edge {" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "} -> {" +
                                   std::to_string(x + 1) + "," + std::to_string(y + 1) +
                                   "} does not join pairs sharing exactly one index");
        Face f;
        f.tail_pair = tail;
        f.head_pair = head;
        f.apex = common.front();
        f.tail_other = a == f.apex ? b : a;
        f.head_other = x == f.apex ? y : x;
        return f;
    };
    for (const auto& comp : g.components()) {
        PolyComponent pc;
        pc.cycle = comp.cycle;
        const auto& vs = comp.vertices;
        const std::size_t m = comp.cycle ? vs.size() : vs.size() - 1;
        for (std::size_t i = 0; i < m; ++i) pc.faces.push_back(face_of(vs[i], vs[(i + 1) % vs.size()]));
        if (!comp.cycle) {
            pc.initial = vs.front();
            pc.terminal = vs.back();
        }
        h.components.push_back(std::move(pc));
    }
    return h;
}

enum class SurfaceKind { NodalAnnulus, NodalMoebius, ConedDisk, ChainNodalDisk };

inline const char* to_string(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::NodalAnnulus: return "nodal-annulus";
        case SurfaceKind::NodalMoebius: return "nodal-moebius";
        case SurfaceKind::ConedDisk: return "coned-disk";
        case SurfaceKind::ChainNodalDisk: return "chain-nodal-disk";
    }
    return "?";
}

struct ComponentClass {
    SurfaceKind kind = SurfaceKind::ChainNodalDisk;
    /// Euler characteristic of the normalization (nodes separated): corners are
    /// identified only through shared black sides.
    long euler_characteristic = 0;
    /// Indices present in more than one corner class, i.e. the nodes.
    std::vector<std::size_t> nodes;
};

/// Euler characteristic and node list of a component, gluing faces only along shared black sides.
inline ComponentClass normalized_topology(const PolyComponent& pc) {
    const std::size_t f = pc.faces.size();
    // Corner (face, label) -> slot 3*face + {0: apex, 1: tail_other, 2: head_other}.
    std::vector<std::size_t> parent(3 * f);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto corner = [&](std::size_t face, std::size_t label) {
        const Face& fc = pc.faces[face];
        if (label == fc.apex) return 3 * face;
        if (label == fc.tail_other) return 3 * face + 1;
        return 3 * face + 2;
    };
    std::set<std::size_t> black;
    for (std::size_t i = 0; i < f; ++i) {
        black.insert(pc.faces[i].tail_pair);
        black.insert(pc.faces[i].head_pair);
    }
    // Consecutive faces share the head side of the first as the tail side of the second.
    for (std::size_t i = 0; i + (pc.cycle ? 0 : 1) < f; ++i) {
        const std::size_t j = (i + 1) % f;
        const auto [x, y] = pc.faces[i].s2();
        parent[find(corner(i, x))] = find(corner(j, x));
        parent[find(corner(i, y))] = find(corner(j, y));
    }
    std::set<std::size_t> classes;
    std::map<std::size_t, std::set<std::size_t>> label_classes;
    for (std::size_t i = 0; i < f; ++i)
        for (auto label : {pc.faces[i].apex, pc.faces[i].tail_other, pc.faces[i].head_other}) {
            classes.insert(find(corner(i, label)));
            label_classes[label].insert(find(corner(i, label)));
        }
    ComponentClass cc;
    const long v = static_cast<long>(classes.size());
    const long e = static_cast<long>(black.size() + f);
    cc.euler_characteristic = v - e + static_cast<long>(f);
    for (const auto& [label, cls] : label_classes)
        if (cls.size() > 1) cc.nodes.push_back(label);
    return cc;
}

/// Surface type of an irreducible component.
inline ComponentClass classify_component(const PolyComponent& pc) {
    if (pc.faces.empty()) throw structural_error("empty polyhedron component");
    ComponentClass cc = normalized_topology(pc);
    if (!pc.cycle) {
        cc.kind = SurfaceKind::ChainNodalDisk;
        return cc;
    }
    // An index common to every black side makes the component a cone over it.
    const std::size_t apex = pc.faces.front().apex;
    bool coned = true;
    for (const auto& f : pc.faces) coned = coned && f.apex == apex;
    if (coned) {
        cc.kind = SurfaceKind::ConedDisk;
        return cc;
    }
    std::size_t changes = 0;
    for (std::size_t i = 0; i < pc.faces.size(); ++i)
        changes += pc.faces[i].apex != pc.faces[(i + 1) % pc.faces.size()].apex;
    cc.kind = changes % 2 ? SurfaceKind::NodalMoebius : SurfaceKind::NodalAnnulus;
    return cc;
}

/// Number of ways to mark one black side of every face as first internal side
/// so that every shared side is first in one face and second in the other.
/// Chains keep their initial side first and their terminal side second.
inline std::size_t orientation_count(const PolyComponent& pc) {
    const std::size_t f = pc.faces.size();
    if (f > 24) throw validation_error("orientation search limited to 24 faces");
    std::size_t count = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << f); ++mask) {
        // Bit set: the face keeps its head pair as first side.
        std::map<std::size_t, std::pair<int, int>> roles;  // side -> (#first, #second)
        for (std::size_t i = 0; i < f; ++i) {
            const bool swapped = (mask >> i) & 1;
            const std::size_t first = swapped ? pc.faces[i].head_pair : pc.faces[i].tail_pair;
            const std::size_t second = swapped ? pc.faces[i].tail_pair : pc.faces[i].head_pair;
            ++roles[first].first;
            ++roles[second].second;
        }
        bool ok = true;
        for (const auto& [side, r] : roles) {
            const bool free_side = !pc.cycle && (side == pc.initial || side == pc.terminal) && r.first + r.second == 1;
            if (free_side) {
                ok = ok && ((side == pc.initial) ? r.first == 1 : r.second == 1);
            } else {
                ok = ok && r.first == 1 && r.second == 1;
            }
        }
        count += ok;
    }
    return count;
}

/// How a root is picked in each tree component of the alpha- and e-graphs.
struct RootChoice {
    enum class Policy { Min, Max, Salted, Custom };
    Policy policy = Policy::Min;
    std::size_t salt = 0;
    /// For Custom: (component vertices ascending, alpha side?) -> root.
    std::function<std::size_t(const std::vector<std::size_t>&, bool)> custom;

    [[nodiscard]] std::size_t pick(const std::vector<std::size_t>& vertices, bool alpha_side) const {
        std::size_t r = 0;
        switch (policy) {
            case Policy::Min: r = vertices.front(); break;
            case Policy::Max: r = vertices.back(); break;
            case Policy::Salted: r = vertices[(salt + vertices.front() + (alpha_side ? 0 : 7)) % vertices.size()]; break;
            case Policy::Custom:
                if (!custom) throw validation_error("custom root choice without selector");
                r = custom(vertices, alpha_side);
                break;
        }
        if (!std::binary_search(vertices.begin(), vertices.end(), r))
            throw validation_error("invalid root choice: vertex " + std::to_string(r + 1) + " is not in its tree component");
        return r;
    }
};

/// Tree component of the alpha- or e-graph: its root, vertices and the
/// transport z(u) = product of g along the path from u to the root.
struct RootedComponent {
    std::size_t root = 0;
    std::vector<std::size_t> vertices;
    std::map<std::size_t, Rational> z;
};

/// Structural data of the edge family v_[xy] = u_x - g(x,y) u_y over a graph on 0..n-1.
struct FamilyStructure {
    std::vector<std::size_t> slots;  // per edge, the vertex whose coordinate it pivots on
    Rational factor{1};              // bracket rescalings and cycle factors (1 - holonomy)
    std::vector<RootedComponent> trees;
};

/// Decomposes the family into tree and one-cycle components. Returns nullopt
/// if a component has more edges than vertices (the family is dependent).
inline std::optional<FamilyStructure> analyze_family(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& brackets,
                                                     const std::function<Rational(std::size_t, std::size_t)>& g,
                                                     const RootChoice& roots, bool alpha_side) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& [x, y] : brackets) parent[find(x)] = find(y);
    std::map<std::size_t, std::vector<std::size_t>> comp_vertices;
    for (std::size_t v = 0; v < n; ++v) comp_vertices[find(v)].push_back(v);
    std::vector<std::vector<std::size_t>> comps;
    for (auto& [r, vs] : comp_vertices) comps.push_back(vs);
    std::sort(comps.begin(), comps.end());

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbour, edge)
    for (std::size_t t = 0; t < brackets.size(); ++t) {
        adj[brackets[t].first].emplace_back(brackets[t].second, t);
        adj[brackets[t].second].emplace_back(brackets[t].first, t);
    }

    FamilyStructure fs;
    fs.slots.assign(brackets.size(), 0);
    auto attach = [&](std::size_t child, std::size_t par, std::size_t t) {
        fs.slots[t] = child;
        if (brackets[t] != std::make_pair(child, par)) fs.factor *= -g(par, child);
    };
    for (const auto& vs : comps) {
        std::size_t edges = 0;
        for (auto v : vs) edges += adj[v].size();
        edges /= 2;
        if (edges > vs.size()) return std::nullopt;
        if (edges + 1 == vs.size()) {
            RootedComponent rc;
            rc.root = roots.pick(vs, alpha_side);
            rc.vertices = vs;
            rc.z[rc.root] = 1;
            std::vector<std::size_t> order{rc.root};
            for (std::size_t h = 0; h < order.size(); ++h) {
                const auto v = order[h];
                for (const auto& [w, t] : adj[v]) {
                    if (rc.z.count(w)) continue;
                    attach(w, v, t);
                    rc.z[w] = g(w, v) * rc.z[v];
                    order.push_back(w);
                }
            }
            fs.trees.push_back(std::move(rc));
            continue;
        }
        // One cycle: peel leaves, walk the cycle, then hang the antlers.
        std::map<std::size_t, std::size_t> deg;
        for (auto v : vs) deg[v] = adj[v].size();
        std::set<std::size_t> removed;
        std::vector<std::size_t> leaves;
        for (auto v : vs)
            if (deg[v] == 1) leaves.push_back(v);
        while (!leaves.empty()) {
            const auto v = leaves.back();
            leaves.pop_back();
            removed.insert(v);
            for (const auto& [w, t] : adj[v])
                if (!removed.count(w) && --deg[w] == 1) leaves.push_back(w);
        }
        std::vector<std::size_t> cyc;
        for (auto v : vs)
            if (!removed.count(v)) cyc.push_back(v);
        const std::size_t start = cyc.front();
        std::set<std::size_t> used;
        std::size_t cur = start, nxt = n;
        for (const auto& [w, t] : adj[start])
            if (!removed.count(w)) nxt = std::min(nxt, w);
        Rational hol(1);
        while (true) {
            std::size_t te = brackets.size();
            for (const auto& [w, t] : adj[cur])
                if (w == nxt && !used.count(t)) {
                    te = t;
                    break;
                }
            used.insert(te);
            fs.slots[te] = cur;
            hol *= g(cur, nxt);
            if (brackets[te] != std::make_pair(cur, nxt)) fs.factor *= -g(nxt, cur);
            cur = nxt;
            if (cur == start) break;
            nxt = n;
            for (const auto& [w, t] : adj[cur])
                if (!removed.count(w) && !used.count(t)) {
                    nxt = w;
                    break;
                }
        }
        fs.factor *= Rational(1) - hol;
        std::set<std::size_t> seen(cyc.begin(), cyc.end());
        std::vector<std::size_t> order(cyc.begin(), cyc.end());
        for (std::size_t h = 0; h < order.size(); ++h) {
            const auto v = order[h];
            for (const auto& [w, t] : adj[v]) {
                if (seen.count(w)) continue;
                seen.insert(w);
                attach(w, v, t);
                order.push_back(w);
            }
        }
    }
    return fs;
}

/// Sign of a sequence of distinct integers read as a permutation.
inline int permutation_sign(const std::vector<std::size_t>& seq) {
    int s = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) s = -s;
    return s;
}

/// Per-polyhedron record of the structural sum.
struct Level2Term {
    Doomb graph;
    Polyhedron2 polyhedron;
    std::vector<ComponentClass> classes;
    Rational face_weight;
    Rational det_MH;
    Rational contribution;
};

/// Face weight c(apex, head_other, tail_other) <alpha_[head], e_[tail]>.
inline Rational face_weight(const Level2System& s, const SkewTriple& c, const Face& f) {
    return c(f.apex, f.head_other, f.tail_other) * s.sys.alpha_e(f.head_pair, f.tail_pair);
}

/// Structural value of one polyhedron: face weights times
/// sign * (bracket and cycle factors) * det M(H), where M(H)_ij sums
/// z_alpha_i(u) z_e_j(u) over the vertices u shared by the i-th alpha tree and the j-th e tree.
inline Level2Term level2_polyhedron_term(const Level2System& s, const SkewTriple& c, const Doomb& g,
                                                        const RootChoice& roots) {
    Level2Term term;
    term.graph = g;
    term.polyhedron = doomb_to_polyhedron(s.n, g);
    term.face_weight = 1;
    for (const auto& comp : term.polyhedron.components)
        for (const auto& f : comp.faces) term.face_weight *= face_weight(s, c, f);
    for (const auto& comp : term.polyhedron.components) term.classes.push_back(classify_component(comp));

    std::vector<std::pair<std::size_t, std::size_t>> alpha_br, e_br;
    for (const auto& [tail, head] : g.edges()) {
        alpha_br.push_back(s.brackets.bracket(s.n, tail));
        e_br.push_back(s.brackets.bracket(s.n, head));
    }
    const auto fa = analyze_family(s.n, alpha_br, [&](std::size_t x, std::size_t y) { return s.phi(x, y); }, roots, true);
    const auto fe = analyze_family(s.n, e_br, [&](std::size_t x, std::size_t y) { return s.phi(y, x); }, roots, false);
    if (!fa || !fe || fa->factor.is_zero() || fe->factor.is_zero() || term.face_weight.is_zero()) {
        term.det_MH = 0;
        term.contribution = 0;
        return term;
    }
    auto sign_of = [](const FamilyStructure& fs) {
        std::vector<std::size_t> seq = fs.slots;
        for (const auto& t : fs.trees) seq.push_back(t.root);
        return permutation_sign(seq);
    };
    Matrix mh(fa->trees.size(), fe->trees.size());
    for (std::size_t i = 0; i < fa->trees.size(); ++i)
        for (std::size_t j = 0; j < fe->trees.size(); ++j)
            for (const auto& [u, za] : fa->trees[i].z) {
                const auto it = fe->trees[j].z.find(u);
                if (it != fe->trees[j].z.end()) mh(i, j) += za * it->second;
            }
    term.det_MH = det(mh);
    term.contribution = term.face_weight * Rational(sign_of(*fa) * sign_of(*fe)) * fa->factor * fe->factor * term.det_MH;
    return term;
}

/// Right-hand side of the level-2 determinant formula for mu_k: the sum of
/// polyhedron terms over the k-edge DOOMBs on the pair alphabet.
inline Rational level2_mu_rhs(const SkewTriple& c, const LineBundle& b, std::size_t k, const RootChoice& roots = {},
                              const BracketChoice& brackets = {}, std::vector<Level2Term>* audit = nullptr) {
    const Level2System s = level2_pair_system(c, b, brackets);
    const WeightTable w = weight_table(s.sys, s.poly);
    Rational total;
    for_each_doomb(s.sys.N(), k, support(w), [&](const std::vector<DEdge>& e) {
        const auto term = level2_polyhedron_term(s, c, Doomb(s.sys.N(), e), roots);
        total += term.contribution;
        if (audit) audit->push_back(term);
    });
    return total;
}

}  // namespace rankone
