#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankone/bundle.hpp"
#include "rankone/doomb.hpp"
#include "rankone/level2.hpp"
#include "rankone/ncpoly.hpp"
#include "rankone/random.hpp"
#include "rankone/rank1.hpp"
#include "rankone/skew_triple.hpp"

/// JSON schemas. Vertex and letter indices are 1-based on the wire,
/// rationals are strings "p/q" or "p" (plain JSON integers are accepted too).
namespace rankone::io {

using nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw validation_error(where + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw validation_error(where + ": missing field '" + key + "'");
    return *it;
}

inline std::size_t count(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw validation_error(where + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

/// 1-based index in 1..limit, returned 0-based.
inline std::size_t index1(const json& j, std::size_t limit, const std::string& where) {
    if (!j.is_number_integer()) throw validation_error(where + ": expected an integer index");
    const long long v = j.get<long long>();
    if (v < 1 || static_cast<std::size_t>(v) > limit)
        throw validation_error(where + ": index " + std::to_string(v) + " outside 1.." + std::to_string(limit));
    return static_cast<std::size_t>(v - 1);
}

}  // namespace detail

inline Rational rational_from_json(const json& j, const std::string& where = "rational") {
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const value_error& e) {
            throw validation_error(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
    throw validation_error(where + ": expected a rational string like \"p/q\"");
}

inline json to_json(const Rational& r) { return r.str(); }

inline json to_json(const Vector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline json to_json(const Matrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

inline Vector vector_from_json(const json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) throw validation_error(where + ": expected an array of " + std::to_string(n) + " rationals");
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline Matrix matrix_from_json(const json& j, const std::string& where = "matrix") {
    if (!j.is_array()) throw validation_error(where + ": expected an array of rows");
    std::vector<Vector> rows;
    const std::size_t cols = j.empty() ? 0 : (j[0].is_array() ? j[0].size() : 0);
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vector_from_json(j[i], cols, where + "[" + std::to_string(i) + "]"));
    return Matrix::from_rows(rows);
}

inline json to_json(const Polynomial& p) {
    json a = json::array();
    for (const auto& c : p.coefficients()) a.push_back(c.str());
    return a;
}

inline json to_json(const NCPoly& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms()) {
        json word = json::array();
        for (auto x : w) word.push_back(x + 1);
        terms.push_back({{"coeff", c.str()}, {"word", word}});
    }
    return {{"N", p.alphabet_size()}, {"terms", terms}};
}

inline NCPoly ncpoly_from_json(const json& j, const std::string& where = "poly") {
    const std::size_t N = detail::count(detail::field(j, "N", where), where + ".N");
    const json& terms = detail::field(j, "terms", where);
    if (!terms.is_array()) throw validation_error(where + ".terms: expected an array");
    NCPoly p(N);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string w = where + ".terms[" + std::to_string(t) + "]";
        const json& word = detail::field(terms[t], "word", w);
        if (!word.is_array() || word.empty()) throw validation_error(w + ".word: expected a nonempty array of letters");
        Word letters;
        for (const auto& x : word) letters.push_back(detail::index1(x, N, w + ".word"));
        p.add(letters, rational_from_json(detail::field(terms[t], "coeff", w), w + ".coeff"));
    }
    return p;
}

inline json to_json(const RankOneSystem& s) {
    json e = json::array(), a = json::array();
    for (std::size_t i = 0; i < s.N(); ++i) {
        e.push_back(to_json(s.e(i)));
        a.push_back(to_json(s.alpha(i)));
    }
    return {{"n", s.n()}, {"N", s.N()}, {"e", e}, {"alpha", a}};
}

inline RankOneSystem rank1_from_json(const json& j, const std::string& where = "rank1") {
    const std::size_t n = detail::count(detail::field(j, "n", where), where + ".n");
    const std::size_t N = detail::count(detail::field(j, "N", where), where + ".N");
    const json& e = detail::field(j, "e", where);
    const json& a = detail::field(j, "alpha", where);
    if (!e.is_array() || e.size() != N || !a.is_array() || a.size() != N)
        throw validation_error(where + ": 'e' and 'alpha' must list N vectors");
    std::vector<Vector> ev, av;
    for (std::size_t i = 0; i < N; ++i) {
        ev.push_back(vector_from_json(e[i], n, where + ".e[" + std::to_string(i) + "]"));
        av.push_back(vector_from_json(a[i], n, where + ".alpha[" + std::to_string(i) + "]"));
    }
    return RankOneSystem(n, std::move(ev), std::move(av));
}

/// Graph schema; `signed_edges` adds "sign" ("+" for layer 1, "-" otherwise).
inline json to_json(const LineBundle& b, bool signed_edges = false) {
    json edges = json::array();
    for (const auto& e : b.edges()) {
        json x = {{"u", e.u + 1}, {"v", e.v + 1}, {"phi", e.phi.str()}, {"c", e.c.str()}};
        if (signed_edges) x["sign"] = e.layer == 1 ? "+" : "-";
        edges.push_back(x);
    }
    return {{"n", b.n()}, {"edges", edges}};
}

/// Graph schema; with `signed_edges` every edge carries "sign": "+" or "-"
/// (the Unicode minus is accepted) and phi defaults to -1 or 1 accordingly.
inline LineBundle bundle_from_json(const json& j, bool signed_edges = false, const std::string& where = "bundle") {
    const std::size_t n = detail::count(detail::field(j, "n", where), where + ".n");
    const json& edges = detail::field(j, "edges", where);
    if (!edges.is_array()) throw validation_error(where + ".edges: expected an array");
    std::vector<BundleEdge> out;
    for (std::size_t t = 0; t < edges.size(); ++t) {
        const std::string w = where + ".edges[" + std::to_string(t) + "]";
        BundleEdge e;
        e.u = detail::index1(detail::field(edges[t], "u", w), n, w + ".u");
        e.v = detail::index1(detail::field(edges[t], "v", w), n, w + ".v");
        e.c = edges[t].contains("c") ? rational_from_json(edges[t]["c"], w + ".c") : Rational(1);
        if (signed_edges) {
            const json& s = detail::field(edges[t], "sign", w);
            const std::string sign = s.is_string() ? s.get<std::string>() : "";
            if (sign == "+")
                e.layer = 1;
            else if (sign == "-" || sign == "−")
                e.layer = 0;
            else
                throw validation_error(w + ".sign: expected \"+\" or \"-\"");
            const Rational expected = e.layer == 1 ? Rational(-1) : Rational(1);
            e.phi = edges[t].contains("phi") ? rational_from_json(edges[t]["phi"], w + ".phi") : expected;
            if (e.phi != expected) throw validation_error(w + ".phi: signed edges carry phi = 1 (\"-\") or -1 (\"+\")");
        } else {
            e.phi = edges[t].contains("phi") ? rational_from_json(edges[t]["phi"], w + ".phi") : Rational(1);
        }
        out.push_back(e);
    }
    try {
        return LineBundle(n, std::move(out));
    } catch (const validation_error& e) {
        throw validation_error(where + ": " + e.what());
    }
}

inline json to_json(const SkewTriple& c) {
    json t = json::array();
    for (const auto& [key, v] : c.entries()) {
        const auto [i, j, k] = key;
        t.push_back({{"ijk", {i + 1, j + 1, k + 1}}, {"c", v.str()}});
    }
    return t;
}

inline SkewTriple skew_from_json(const json& j, std::size_t n, const std::string& where = "triples") {
    if (!j.is_array()) throw validation_error(where + ": expected an array");
    std::map<SkewTriple::Key, Rational> entries;
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string w = where + "[" + std::to_string(t) + "]";
        const json& ijk = detail::field(j[t], "ijk", w);
        if (!ijk.is_array() || ijk.size() != 3) throw validation_error(w + ".ijk: expected three indices");
        const SkewTriple::Key key{detail::index1(ijk[0], n, w), detail::index1(ijk[1], n, w), detail::index1(ijk[2], n, w)};
        const Rational v = rational_from_json(detail::field(j[t], "c", w), w + ".c");
        if (!entries.emplace(key, v).second) throw validation_error(w + ": duplicate triple");
    }
    return SkewTriple::from_entries(n, entries);
}

/// Level-2 payload: a bundle plus "triples": [{"ijk": [i,j,k], "c": "p/q"}].
struct Level2Instance {
    LineBundle bundle;
    SkewTriple c;
};

inline json to_json(const Level2Instance& l) {
    json j = to_json(l.bundle);
    j["triples"] = to_json(l.c);
    return j;
}

inline Level2Instance level2_from_json(const json& j, const std::string& where = "level2") {
    Level2Instance l{bundle_from_json(j, false, where), SkewTriple()};
    l.c = skew_from_json(detail::field(j, "triples", where), l.bundle.n(), where + ".triples");
    require_level2_support(l.c, l.bundle);
    return l;
}

/// rank1 payload: the system fields plus "P": an NCPoly object.
struct Rank1Instance {
    RankOneSystem sys;
    NCPoly poly;
};

inline json to_json(const Rank1Instance& r) {
    json j = to_json(r.sys);
    j["P"] = to_json(r.poly);
    return j;
}

inline Rank1Instance rank1_instance_from_json(const json& j, const std::string& where = "rank1") {
    Rank1Instance r{rank1_from_json(j, where), ncpoly_from_json(detail::field(j, "P", where), where + ".P")};
    if (r.poly.alphabet_size() != r.sys.N()) throw validation_error(where + ".P: alphabet size differs from N");
    return r;
}

/// Pair of symmetric weight tables for the doubled-edge construction.
struct MttdInstance {
    Matrix c_minus, c_plus;
};

inline MttdInstance mttd_from_bundle(const LineBundle& b) {
    MttdInstance m{Matrix(b.n(), b.n()), Matrix(b.n(), b.n())};
    for (const auto& e : b.edges()) {
        Matrix& t = e.layer == 1 ? m.c_plus : m.c_minus;
        t(e.u, e.v) += e.c;
        t(e.v, e.u) += e.c;
    }
    return m;
}

inline json to_json(const MttdInstance& m) { return to_json(mttd_bundle(m.c_minus, m.c_plus), true); }

enum class InstanceKind { Rank1, Bundle, Mttd, Level2 };

inline const char* to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::Rank1: return "rank1";
        case InstanceKind::Bundle: return "bundle";
        case InstanceKind::Mttd: return "mttd";
        case InstanceKind::Level2: return "level2";
    }
    return "?";
}

inline InstanceKind kind_from_string(const std::string& s) {
    if (s == "rank1") return InstanceKind::Rank1;
    if (s == "bundle") return InstanceKind::Bundle;
    if (s == "mttd") return InstanceKind::Mttd;
    if (s == "level2") return InstanceKind::Level2;
    throw validation_error("kind: expected one of rank1, bundle, mttd, level2; got '" + s + "'");
}

/// {"kind": ..., "payload": ..., "seed": optional}. Without a payload the
/// seed generates a random instance of the kind (payload {"n": ...} may fix its size).
struct InstanceFile {
    InstanceKind kind = InstanceKind::Rank1;
    std::optional<std::uint64_t> seed;
    Rank1Instance rank1;
    LineBundle bundle;
    MttdInstance mttd;
    Level2Instance level2;

    [[nodiscard]] std::size_t n() const {
        switch (kind) {
            case InstanceKind::Rank1: return rank1.sys.n();
            case InstanceKind::Bundle: return bundle.n();
            case InstanceKind::Mttd: return mttd.c_minus.rows();
            case InstanceKind::Level2: return level2.bundle.n();
        }
        return 0;
    }
};

inline json payload_to_json(const InstanceFile& f) {
    switch (f.kind) {
        case InstanceKind::Rank1: return to_json(f.rank1);
        case InstanceKind::Bundle: return to_json(f.bundle);
        case InstanceKind::Mttd: return to_json(f.mttd);
        case InstanceKind::Level2: return to_json(f.level2);
    }
    return {};
}

inline json to_json(const InstanceFile& f) {
    json j = {{"kind", to_string(f.kind)}, {"payload", payload_to_json(f)}};
    if (f.seed) j["seed"] = *f.seed;
    return j;
}

/// Random instance of the given kind and size.
inline InstanceFile generate_instance(InstanceKind kind, std::uint64_t seed, std::size_t n) {
    auto rng = random::trial_rng(seed, 0);
    InstanceFile f;
    f.kind = kind;
    f.seed = seed;
    switch (kind) {
        case InstanceKind::Rank1: {
            const std::size_t N = random::uniform(rng, 1, 5);
            f.rank1 = {random::rank_one_system(rng, n, N), random::ncpoly(rng, N, 3, 12)};
            break;
        }
        case InstanceKind::Bundle: f.bundle = random::bundle(rng, n, 10); break;
        case InstanceKind::Mttd: f.mttd = {random::symmetric_weights(rng, n), random::symmetric_weights(rng, n)}; break;
        case InstanceKind::Level2: {
            f.level2.bundle = random::complete_bundle(rng, n);
            f.level2.c = random::skew_triple(rng, n);
            break;
        }
    }
    return f;
}

inline InstanceFile instance_from_json(const json& j) {
    if (!j.is_object()) throw validation_error("instance: expected a JSON object");
    const json& k = detail::field(j, "kind", "instance");
    if (!k.is_string()) throw validation_error("instance.kind: expected a string");
    const InstanceKind kind = kind_from_string(k.get<std::string>());
    std::optional<std::uint64_t> seed;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
            throw validation_error("instance.seed: expected a nonnegative integer");
        seed = j["seed"].get<std::uint64_t>();
    }
    const bool has_payload = j.contains("payload");
    const bool size_only = has_payload && j["payload"].is_object() && j["payload"].size() == 1 && j["payload"].contains("n");
    if (!has_payload || size_only) {
        if (!seed) throw validation_error("instance: a payload or a seed is required");
        const std::size_t n = size_only ? detail::count(j["payload"]["n"], "payload.n") : (kind == InstanceKind::Bundle ? 4 : 3);
        if (n < 1 || n > 8) throw validation_error("payload.n: generated instances need 1 <= n <= 8");
        if (kind == InstanceKind::Level2 && n < 3) throw validation_error("payload.n: level2 instances need n >= 3");
        return generate_instance(kind, *seed, n);
    }
    const json& p = j["payload"];
    InstanceFile f;
    f.kind = kind;
    f.seed = seed;
    switch (kind) {
        case InstanceKind::Rank1: f.rank1 = rank1_instance_from_json(p, "payload"); break;
        case InstanceKind::Bundle: f.bundle = bundle_from_json(p, false, "payload"); break;
        case InstanceKind::Mttd: f.mttd = mttd_from_bundle(bundle_from_json(p, true, "payload")); break;
        case InstanceKind::Level2: f.level2 = level2_from_json(p, "payload"); break;
    }
    return f;
}

inline json to_json(const Doomb& g) {
    json edges = json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a + 1, b + 1});
    return edges;
}

/// Audit record of one DOOMB term.
inline json to_json(const DoombTerm& t) {
    return {{"edges", to_json(t.graph)}, {"weight", t.weight.str()}, {"gram_det", t.gram_det.str()}};
}

inline json to_json(const MixedForest& f, const LineBundle& b) {
    json edges = json::array(), comps = json::array();
    for (auto id : f.edges) {
        const auto& e = b.edge(id);
        json x = {e.u + 1, e.v + 1};
        edges.push_back(x);
    }
    for (const auto& c : f.components) {
        json vs = json::array();
        for (auto v : c.vertices) vs.push_back(v + 1);
        json x = {{"vertices", vs}, {"edges", c.edges.size()}, {"type", c.cycle ? "one-cycle" : "tree"}};
        if (c.cycle) x["holonomy"] = c.holonomy.str();
        comps.push_back(x);
    }
    return {{"edges", edges}, {"components", comps}};
}

inline json pair_json(std::size_t n, std::size_t p) {
    const auto [i, j] = pair_of(n, p);
    return {i + 1, j + 1};
}

/// DOOMB on the pair alphabet with each vertex written as its pair.
inline json pair_doomb_json(std::size_t n, const Doomb& g) {
    json edges = json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({pair_json(n, a), pair_json(n, b)});
    return edges;
}

inline json to_json(const Polyhedron2& h) {
    json comps = json::array();
    for (const auto& pc : h.components) {
        json faces = json::array();
        for (const auto& f : pc.faces)
            faces.push_back({{"s1", pair_json(h.n, f.tail_pair)},
                             {"s2", pair_json(h.n, f.head_pair)},
                             {"s3", {std::min(f.tail_other, f.head_other) + 1, std::max(f.tail_other, f.head_other) + 1}},
                             {"apex", f.apex + 1}});
        json c = {{"type", pc.cycle ? "cycle" : "chain"}, {"faces", faces}};
        if (!pc.cycle) {
            c["initial"] = pair_json(h.n, pc.initial);
            c["terminal"] = pair_json(h.n, pc.terminal);
        }
        comps.push_back(c);
    }
    return comps;
}

inline json to_json(const ComponentClass& c) {
    json nodes = json::array();
    for (auto v : c.nodes) nodes.push_back(v + 1);
    return {{"kind", to_string(c.kind)}, {"chi", c.euler_characteristic}, {"nodes", nodes}};
}

/// Audit record of one polyhedron term.
inline json to_json(const Level2Term& t) {
    json classes = json::array();
    for (const auto& c : t.classes) classes.push_back(to_json(c));
    return {{"doomb", pair_doomb_json(t.polyhedron.n, t.graph)},
            {"faces", to_json(t.polyhedron)},
            {"classes", classes},
            {"face_weight", t.face_weight.str()},
            {"det_MH", t.det_MH.str()},
            {"contribution", t.contribution.str()}};
}

}  // namespace rankone::io
