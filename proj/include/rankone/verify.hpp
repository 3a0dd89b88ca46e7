#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rankone/bundle.hpp"
#include "rankone/doomb.hpp"
#include "rankone/io/json.hpp"
#include "rankone/lemmas.hpp"
#include "rankone/level2.hpp"
#include "rankone/random.hpp"

/// Randomized verification campaigns: each trial draws an instance from its
/// own seeded stream, evaluates a combinatorial formula and an independent
/// linear-algebra oracle, and records exact comparisons.
namespace rankone::verify {

using io::json;

/// One compared quantity. For theorem campaigns `k` is the coefficient index.
struct Row {
    std::string label;
    Rational combinatorial;
    Rational oracle;
    std::optional<Rational> third;  // level-2: mu via the pair-system DOOMB sum
    bool equal = false;
};

struct Check {
    std::string name;
    bool ok = false;
};

struct Trial {
    std::size_t index = 0;
    std::size_t n = 0;
    std::vector<Row> rows;
    std::vector<Check> checks;
    json instance;
    json audit;

    [[nodiscard]] bool passed() const {
        for (const auto& r : rows)
            if (!r.equal) return false;
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    void compare(std::string label, const Rational& comb, const Rational& oracle) {
        rows.push_back({std::move(label), comb, oracle, std::nullopt, comb == oracle});
    }
    void check(std::string name, bool ok) { checks.push_back({std::move(name), ok}); }
};

struct Options {
    std::size_t trials = 20;
    std::size_t min_n = 0;  // 0: the campaign's own lower bound
    std::size_t max_n = 4;
    std::uint64_t seed = 0;
    bool audit = false;
};

struct Campaign {
    std::string theorem;
    Options options;
    std::vector<Trial> trials;

    [[nodiscard]] std::size_t passed() const {
        std::size_t p = 0;
        for (const auto& t : trials) p += t.passed();
        return p;
    }
    [[nodiscard]] std::size_t failed() const { return trials.size() - passed(); }
};

inline const std::vector<std::string>& theorems() {
    static const std::vector<std::string> names{"main", "det", "forman", "mtt", "mttd", "level2", "lemmas"};
    return names;
}

/// Upper bound on max_n accepted by each campaign.
inline std::size_t max_n_bound(const std::string& theorem) {
    if (theorem == "forman" || theorem == "mtt") return 6;
    if (theorem == "det") return 5;
    if (theorem == "lemmas") return 8;
    return 4;
}

/// Lower bound on max_n.
inline std::size_t min_n_bound(const std::string& theorem) {
    if (theorem == "level2") return 3;
    if (theorem == "lemmas") return 3;
    if (theorem == "forman" || theorem == "mtt" || theorem == "mttd") return 2;
    return 1;
}

namespace detail {

inline std::size_t draw_n(random::Rng& rng, const Options& o, std::size_t lowest) {
    return random::uniform(rng, std::max(lowest, o.min_n), o.max_n);
}

inline std::string k_label(std::size_t k) { return "k=" + std::to_string(k); }

inline Rational signed_coeff(const Polynomial& p, std::size_t n, std::size_t k) {
    const Rational c = p.coeff(n - k);
    return k % 2 ? -c : c;
}

}  // namespace detail

/// mu_k over DOOMBs against principal minor sums of the assembled operator.
inline Trial trial_main(random::Rng& rng, const Options& o) {
    Trial t;
    t.n = detail::draw_n(rng, o, 1);
    const std::size_t N = random::uniform(rng, 1, 5);
    const RankOneSystem sys = random::rank_one_system(rng, t.n, N);
    const NCPoly p = random::ncpoly(rng, N, 3, 12);
    const Matrix m = assemble(sys, p);
    std::vector<DoombTerm> audit;
    for (std::size_t k = 0; k <= t.n; ++k) {
        const Rational mu = mu_combinatorial(sys, p, k, true, o.audit ? &audit : nullptr);
        t.compare(detail::k_label(k), mu, principal_minor_sum(m, k));
        t.check("pruning sound at " + detail::k_label(k), mu_combinatorial(sys, p, k, false) == mu);
    }
    for (std::size_t k = t.n + 1; k <= N; ++k) t.check("vanishes at " + detail::k_label(k), mu_combinatorial(sys, p, k).is_zero());
    t.check("char_poly agrees", charpoly_combinatorial(sys, p) == char_poly(m));
    t.instance = {{"kind", "rank1"}, {"payload", io::to_json(io::Rank1Instance{sys, p})}};
    if (o.audit) {
        t.audit = json::array();
        for (const auto& a : audit) t.audit.push_back(io::to_json(a));
    }
    return t;
}

/// Operators M_ij = u_i u_j^T with P = sum a_ij x_ij reproduce char_poly of (a_ij).
inline RankOneSystem matrix_unit_system(std::size_t n) {
    std::vector<Vector> e, a;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            e.push_back(unit_vector(n, i));
            a.push_back(unit_vector(n, j));
        }
    return RankOneSystem(n, std::move(e), std::move(a));
}

inline NCPoly matrix_unit_poly(const Matrix& a) {
    std::map<std::size_t, Rational> c;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c[i * a.cols() + j] = a(i, j);
    return linear_poly(a.rows() * a.cols(), c);
}

inline Trial trial_det(random::Rng& rng, const Options& o) {
    Trial t;
    t.n = detail::draw_n(rng, o, 1);
    const Matrix a = random::matrix(rng, t.n, t.n);
    const RankOneSystem sys = matrix_unit_system(t.n);
    const NCPoly p = matrix_unit_poly(a);
    const Polynomial cp = char_poly(a);
    for (std::size_t k = 0; k <= t.n; ++k) t.compare(detail::k_label(k), mu_combinatorial(sys, p, k), detail::signed_coeff(cp, t.n, k));
    t.check("assembled operator is the matrix", assemble(sys, p) == a);
    t.check("char_poly agrees", charpoly_combinatorial(sys, p) == cp);
    t.instance = {{"kind", "rank1"}, {"payload", io::to_json(io::Rank1Instance{sys, p})}};
    return t;
}

inline Trial trial_forman(random::Rng& rng, const Options& o) {
    Trial t;
    t.n = detail::draw_n(rng, o, 2);
    const bool flat = random::coin(rng, 0.25);
    const LineBundle b = random::bundle(rng, t.n, 10, flat);
    const Matrix l = laplacian(b);
    const Polynomial cp = char_poly(l);
    const RankOneSystem sys = pair_system(b);
    const NCPoly p = laplacian_poly(b);
    std::size_t unit_cycles = 0;
    bool unit_cycles_vanish = true;
    for (std::size_t k = 0; k <= t.n; ++k) {
        const Rational f = forman_mu(b, k);
        t.compare(detail::k_label(k), f, detail::signed_coeff(cp, t.n, k));
        if (t.n <= 4) t.check("agrees with the DOOMB sum at " + detail::k_label(k), mu_combinatorial(sys, p, k) == f);
        for_each_mixed_forest(b, k, [&](const MixedForest& mf) {
            for (const auto& c : mf.components)
                if (c.cycle && c.holonomy == Rational(1)) {
                    ++unit_cycles;
                    unit_cycles_vanish = unit_cycles_vanish && forman_term(b, mf).is_zero();
                }
        });
    }
    t.check("laplacian equals the assembled rank-one operator", assemble(sys, p) == l);
    t.check("cycles with holonomy 1 contribute 0 (" + std::to_string(unit_cycles) + " seen)", unit_cycles_vanish);
    t.instance = {{"kind", "bundle"}, {"payload", io::to_json(b)}};
    return t;
}

inline Trial trial_mtt(random::Rng& rng, const Options& o) {
    Trial t;
    t.n = detail::draw_n(rng, o, 2);
    const Matrix c = random::symmetric_weights(rng, t.n);
    const LineBundle b = trivial_bundle(c);
    const Polynomial cp = char_poly(laplacian(b));
    for (std::size_t k = 0; k <= t.n; ++k) {
        const Rational m = mtt_mu(c, k);
        t.compare(detail::k_label(k), m, detail::signed_coeff(cp, t.n, k));
        t.check("agrees with forman_mu at " + detail::k_label(k), forman_mu(b, k) == m);
    }
    t.check("no forest has n edges", mtt_mu(c, t.n).is_zero());
    t.check("mu_{n-1} = n * reduced determinant",
            mtt_mu(c, t.n - 1) == Rational(static_cast<long>(t.n)) * kirchhoff_tree_count(c));
    t.instance = {{"kind", "bundle"}, {"payload", io::to_json(b)}};
    return t;
}

inline Trial trial_mttd(random::Rng& rng, const Options& o) {
    Trial t;
    t.n = detail::draw_n(rng, o, 2);
    const Matrix cm = random::symmetric_weights(rng, t.n), cp = random::symmetric_weights(rng, t.n);
    const Matrix op = mttd_operator(cm, cp);
    const Polynomial poly = char_poly(op);
    const LineBundle b = mttd_bundle(cm, cp);
    for (std::size_t k = 0; k <= t.n; ++k) {
        const Rational m = mttd_mu(cm, cp, k);
        t.compare(detail::k_label(k), m, detail::signed_coeff(poly, t.n, k));
        t.check("agrees with forman_mu of the doubled bundle at " + detail::k_label(k), forman_mu(b, k) == m);
    }
    // Odd "+" count on every cycle <=> every cycle has holonomy -1 (never 1).
    const LineBundle full = mttd_bundle(cm, cp, true);
    bool filters_agree = true;
    for (std::size_t k = 0; k <= t.n; ++k)
        for_each_mixed_forest(full, k, [&](const MixedForest& f) {
            bool nontrivial = true;
            for (const auto& c : f.components) nontrivial = nontrivial && (!c.cycle || c.holonomy == Rational(-1));
            filters_agree = filters_agree && (odd_plus_cycles(full, f) == nontrivial);
        });
    t.check("odd-plus filter equals holonomy filter", filters_agree);
    t.check("operator equals the doubled-bundle laplacian", laplacian(b) == op);
    t.instance = {{"kind", "mttd"}, {"payload", io::to_json(io::MttdInstance{cm, cp})}};
    return t;
}

inline Trial trial_level2(random::Rng& rng, const Options& o) {
    Trial t;
    t.n = detail::draw_n(rng, o, 3);
    const LineBundle b = random::complete_bundle(rng, t.n);
    const SkewTriple c = random::skew_triple(rng, t.n);
    const Matrix l = level2_laplacian(c, b);
    const Level2System s = level2_pair_system(c, b);
    t.check("explicit operator equals the assembled one", assemble(s.sys, s.poly) == l);
    const WeightTable w = weight_table(s.sys, s.poly);
    bool loops_zero = true;
    for (std::size_t p = 0; p < w.rows(); ++p) loops_zero = loops_zero && w(p, p).is_zero();
    t.check("pair loops carry weight 0", loops_zero);

    std::vector<RootChoice> roots(5);
    roots[1].policy = RootChoice::Policy::Max;
    roots[2].policy = RootChoice::Policy::Salted;
    roots[2].salt = 1;
    roots[3].policy = RootChoice::Policy::Salted;
    roots[3].salt = 2;
    roots[4].policy = RootChoice::Policy::Custom;
    roots[4].custom = [](const std::vector<std::size_t>& vs, bool alpha) { return vs[(vs.size() - 1) / 2 + (alpha ? 0 : vs.size() / 2)]; };
    std::vector<BracketChoice> brackets(3);
    for (auto& br : brackets)
        for (std::size_t p = 0; p < pair_count(t.n); ++p) br.flipped.push_back(random::coin(rng));

    bool orient_ok = true, chi_ok = true, roots_ok = true, brackets_ok = true;
    std::vector<Level2Term> audit_terms;
    for (std::size_t k = 0; k <= t.n; ++k) {
        std::vector<Level2Term> terms;
        const Rational rhs = level2_mu_rhs(c, b, k, roots[0], {}, &terms);
        const Rational oracle = principal_minor_sum(l, k);
        const Rational comb = mu_combinatorial(s.sys, s.poly, k);
        t.rows.push_back({detail::k_label(k), rhs, oracle, comb, rhs == oracle && comb == oracle});
        for (std::size_t r = 1; r < roots.size(); ++r) roots_ok = roots_ok && level2_mu_rhs(c, b, k, roots[r]) == rhs;
        for (const auto& br : brackets) brackets_ok = brackets_ok && level2_mu_rhs(c, b, k, roots[0], br) == rhs;
        for (const auto& term : terms) {
            for (std::size_t i = 0; i < term.polyhedron.components.size(); ++i) {
                const auto& pc = term.polyhedron.components[i];
                const auto& cls = term.classes[i];
                orient_ok = orient_ok && orientation_count(pc) == (pc.cycle ? 2u : 1u);
                const bool band = cls.kind == SurfaceKind::NodalAnnulus || cls.kind == SurfaceKind::NodalMoebius;
                chi_ok = chi_ok && cls.euler_characteristic == (band ? 0 : 1);
            }
        }
        if (o.audit) audit_terms.insert(audit_terms.end(), terms.begin(), terms.end());
    }
    t.check("root-choice invariance (4 alternatives)", roots_ok);
    t.check("bracket-order invariance (3 alternatives)", brackets_ok);
    t.check("orientation counts: 2 per cycle, 1 per chain", orient_ok);
    t.check("euler characteristic 0 for bands, 1 for disks", chi_ok);

    // Trivial connection: the operator is skew-symmetric and odd mu_k vanish.
    std::vector<BundleEdge> flat_edges;
    for (auto e : b.edges()) flat_edges.push_back({e.u, e.v, Rational(1), e.c, 0});
    const Matrix lf = level2_laplacian(c, LineBundle(t.n, flat_edges));
    bool skew = lf.transpose() == Rational(-1) * lf;
    for (std::size_t k = 1; k <= t.n; k += 2) skew = skew && principal_minor_sum(lf, k).is_zero();
    t.check("trivial connection gives a skew operator", skew);

    t.instance = {{"kind", "level2"}, {"payload", io::to_json(io::Level2Instance{b, c})}};
    if (o.audit) {
        t.audit = json::array();
        for (const auto& a : audit_terms) t.audit.push_back(io::to_json(a));
    }
    return t;
}

/// One instance of every lemma with sizes up to max_n vertices.
inline Trial trial_lemmas(random::Rng& rng, const Options& o) {
    Trial t;
    t.n = detail::draw_n(rng, o, 3);
    json inst = json::object();

    const RootedTree tree = random::rooted_tree(rng, random::uniform(rng, 1, t.n));
    const auto p = det_P_tree(tree), r = det_R_tree(tree), q = det_Q_tree(tree);
    t.compare("tree det P", p.computed, p.closed_form);
    t.compare("tree det R", r.computed, r.closed_form);
    t.compare("tree det Q", q.computed, q.closed_form);
    const auto cv = tree_complement_vectors(tree);
    bool orth = true;
    for (const auto& a : tree.arcs()) orth = orth && dot(cv.b, alpha_vector(tree.n(), a)).is_zero() && dot(cv.f, e_vector(tree.n(), a)).is_zero();
    t.check("complement vectors orthogonal to alpha and e", orth);

    const OneCycleGraph coherent = random::one_cycle_graph(rng, t.n, true);
    const auto pc = pqr_cycle(coherent);
    t.compare("cycle det P", pc.P.computed, pc.P.closed_form);
    t.compare("cycle det R", pc.R.computed, pc.R.closed_form);
    t.compare("cycle det Q", pc.Q.computed, pc.Q.closed_form);
    const OneCycleGraph mixed = random::one_cycle_graph(rng, t.n, false);
    const auto pm = pqr_cycle(mixed);
    t.compare("cycle det Q (any orientation)", pm.Q.computed, pm.Q.closed_form);

    const PQR m = pqr_matrices(mixed.n(), mixed.arcs());
    t.check("psi rules reproduce P, Q, R",
            psi_gram(mixed.arcs(), true, true) == m.P && psi_gram(mixed.arcs(), true, false) == m.Q &&
                psi_gram(mixed.arcs(), false, false) == m.R);

    const std::size_t amb = random::uniform(rng, 2, std::min<std::size_t>(t.n, 6));
    const std::size_t k = random::uniform(rng, 1, amb);
    const auto vs = random::independent_vectors(rng, amb, k);
    const auto g = gram_minor_identity(vs);
    t.compare("gram determinant = sum of squared minors", g.computed, g.closed_form);

    const Subspace a(amb, random::independent_vectors(rng, amb, k)), bsp(amb, random::independent_vectors(rng, amb, k));
    const auto [ang, ang_perp] = orth_complement_angle_duality(a, bsp);
    t.compare("angle of complements", ang_perp, ang);
    // Re-basing a by elementary operations keeps det G(M, X) and the angle.
    std::vector<Vector> rebased = a.basis();
    for (std::size_t step = 0; step < 4 && k > 1; ++step) {
        const std::size_t i = random::uniform(rng, 0, k - 1), j = (i + random::uniform(rng, 1, k - 1)) % k;
        const Rational s = random::nonzero(rng);
        for (std::size_t x = 0; x < amb; ++x) rebased[i][x] += s * rebased[j][x];
    }
    t.check("elementary equivalence keeps det G(M, X)", det(gram(rebased, bsp.basis())) == det(gram(a.basis(), bsp.basis())));
    t.compare("angle after re-basing", angle(Subspace(amb, rebased), bsp), ang);

    inst["tree"] = {{"n", tree.n()}, {"root", tree.root() + 1}};
    inst["ambient"] = amb;
    t.instance = {{"kind", "lemmas"}, {"payload", inst}};
    return t;
}

inline Trial run_trial(const std::string& theorem, std::size_t index, const Options& o) {
    auto rng = random::trial_rng(o.seed, index);
    Trial t;
    if (theorem == "main") t = trial_main(rng, o);
    else if (theorem == "det") t = trial_det(rng, o);
    else if (theorem == "forman") t = trial_forman(rng, o);
    else if (theorem == "mtt") t = trial_mtt(rng, o);
    else if (theorem == "mttd") t = trial_mttd(rng, o);
    else if (theorem == "level2") t = trial_level2(rng, o);
    else if (theorem == "lemmas") t = trial_lemmas(rng, o);
    else throw validation_error("unknown theorem '" + theorem + "'");
    t.index = index;
    if (t.instance.is_object() && t.instance.contains("kind") && t.instance["kind"] != "lemmas") t.instance["seed"] = o.seed;
    return t;
}

inline void check_options(const std::string& theorem, const Options& o) {
    bool known = false;
    for (const auto& name : theorems()) known = known || name == theorem;
    if (!known) throw validation_error("unknown theorem '" + theorem + "'");
    if (o.max_n > max_n_bound(theorem) || o.max_n < min_n_bound(theorem))
        throw validation_error("max-n for " + theorem + " must lie in " + std::to_string(min_n_bound(theorem)) + ".." +
                               std::to_string(max_n_bound(theorem)));
    if (o.min_n > o.max_n) throw validation_error("min-n exceeds max-n");
    if (o.trials == 0) throw validation_error("trials must be positive");
}

inline Campaign run_campaign(const std::string& theorem, const Options& o) {
    check_options(theorem, o);
    Campaign c{theorem, o, {}};
    for (std::size_t i = 0; i < o.trials; ++i) c.trials.push_back(run_trial(theorem, i, o));
    return c;
}

inline json to_json(const Row& r) {
    json j = {{"label", r.label}, {"combinatorial", r.combinatorial.str()}, {"oracle", r.oracle.str()}, {"equal", r.equal}};
    if (r.third) j["pair_system"] = r.third->str();
    return j;
}

inline json to_json(const Trial& t, bool audit) {
    json rows = json::array(), failed = json::array();
    for (const auto& r : t.rows) rows.push_back(to_json(r));
    for (const auto& c : t.checks)
        if (!c.ok) failed.push_back(c.name);
    json j = {{"trial", t.index}, {"n", t.n}, {"pass", t.passed()}, {"coefficients", rows}, {"checks", t.checks.size()},
              {"failed_checks", failed}};
    if (audit) {
        j["instance"] = t.instance;
        if (!t.audit.is_null()) j["audit"] = t.audit;
    }
    return j;
}

inline json to_json(const Campaign& c) {
    json trials = json::array();
    for (const auto& t : c.trials) trials.push_back(to_json(t, c.options.audit));
    return {{"theorem", c.theorem},
            {"seed", c.options.seed},
            {"trials", c.options.trials},
            {"min_n", std::max(c.options.min_n, min_n_bound(c.theorem))},
            {"max_n", c.options.max_n},
            {"passed", c.passed()},
            {"failed", c.failed()},
            {"results", trials}};
}

/// trial,label,combinatorial,oracle,equal
inline std::string to_csv(const Campaign& c) {
    std::ostringstream os;
    os << "trial,label,combinatorial,oracle,equal\n";
    for (const auto& t : c.trials) {
        for (const auto& r : t.rows)
            os << t.index << ',' << r.label << ',' << r.combinatorial << ',' << r.oracle << ',' << (r.equal ? "true" : "false") << '\n';
        for (const auto& ch : t.checks)
            os << t.index << ",check: " << ch.name << ",,," << (ch.ok ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace rankone::verify
