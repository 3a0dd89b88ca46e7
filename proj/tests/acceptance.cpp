// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rankone/level2.hpp"
#include "rankone/verify.hpp"

using namespace rankone;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

verify::Campaign campaign(const std::string& theorem, std::size_t trials, std::size_t max_n, std::size_t min_n = 0) {
    verify::Options o;
    o.trials = trials;
    o.max_n = max_n;
    o.min_n = min_n;
    o.seed = 20240611;
    return verify::run_campaign(theorem, o);
}

std::string summary(const verify::Campaign& c) {
    std::ostringstream os;
    os << c.theorem << " " << c.passed() << "/" << c.trials.size();
    for (const auto& t : c.trials)
        if (!t.passed()) {
            os << " first failure: trial " << t.index;
            break;
        }
    return os.str();
}

Outcome from(const verify::Campaign& c) { return {c.failed() == 0, summary(c)}; }

Matrix unit_weights(std::size_t n) {
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) c(i, j) = 1;
    return c;
}

Outcome criterion_main() {
    const auto start = std::chrono::steady_clock::now();
    const auto c = campaign("main", 200, 4);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Outcome o = from(c);
    o.pass = o.pass && secs < 120.0;
    o.detail += ", " + std::to_string(static_cast<int>(secs * 1000)) + " ms";
    return o;
}

Outcome criterion_det() { return from(campaign("det", 50, 5)); }

Outcome criterion_forman() {
    Outcome o = from(campaign("forman", 100, 6));
    // Cycles of holonomy 1 must be exercised and contribute nothing.
    std::size_t unit_cycles = 0;
    bool vanish = true;
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto rng = random::trial_rng(3, s);
        const LineBundle b = random::bundle(rng, 5, 10, true);
        for (std::size_t k = 3; k <= 5; ++k)
            for_each_mixed_forest(b, k, [&](const MixedForest& f) {
                if (f.cycle_count() == 0) return;
                ++unit_cycles;
                vanish = vanish && forman_term(b, f).is_zero();
            });
    }
    o.pass = o.pass && vanish && unit_cycles > 0;
    o.detail += ", " + std::to_string(unit_cycles) + " flat forests with cycles contribute 0";
    return o;
}

Outcome criterion_mtt() {
    Outcome o = from(campaign("mtt", 50, 6));
    const bool k3 = kirchhoff_tree_count(unit_weights(3)) == Rational(3);
    const bool k4 = kirchhoff_tree_count(unit_weights(4)) == Rational(16);
    bool no_n_forests = true, agrees = true;
    for (std::size_t n = 2; n <= 5; ++n) {
        const Matrix c = unit_weights(n);
        no_n_forests = no_n_forests && mtt_mu(c, n).is_zero();
        for (std::size_t k = 0; k <= n; ++k) agrees = agrees && mtt_mu(c, k) == forman_mu(trivial_bundle(c), k);
    }
    o.pass = o.pass && k3 && k4 && no_n_forests && agrees;
    o.detail += std::string(", K3=3 ") + (k3 ? "ok" : "wrong") + ", K4=16 " + (k4 ? "ok" : "wrong");
    return o;
}

Outcome criterion_mttd() { return from(campaign("mttd", 50, 4)); }

Outcome criterion_lemmas() { return from(campaign("lemmas", 100, 8)); }

Outcome criterion_level2() {
    const auto three = campaign("level2", 30, 3, 3);
    const auto four = campaign("level2", 30, 4, 4);
    return {three.failed() == 0 && four.failed() == 0, summary(three) + " (n=3), " + summary(four) + " (n=4)"};
}

Outcome criterion_classification() {
    auto path = [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs, bool closed) {
        std::vector<DEdge> edges;
        const std::size_t m = closed ? pairs.size() : pairs.size() - 1;
        for (std::size_t i = 0; i < m; ++i) {
            const auto [a, b] = pairs[i];
            const auto [x, y] = pairs[(i + 1) % pairs.size()];
            edges.emplace_back(pair_index(n, a, b), pair_index(n, x, y));
        }
        return doomb_to_polyhedron(n, Doomb(pair_count(n), edges)).components.at(0);
    };
    const auto left = path(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}, {0, 3}}, true);
    const auto right = path(6, {{0, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {4, 5}}, false);
    const auto lc = classify_component(left), rc = classify_component(right);
    const bool figures = lc.kind == SurfaceKind::NodalMoebius && rc.kind == SurfaceKind::ChainNodalDisk &&
                         lc.euler_characteristic == 0 && orientation_count(left) == 2 && orientation_count(right) == 1;

    // Every polyhedron produced by the level-2 sums of criterion 7.
    std::size_t components = 0;
    bool counts = true;
    for (std::size_t n = 3; n <= 4; ++n)
        for (std::uint64_t s = 0; s < 30; ++s) {
            auto rng = random::trial_rng(20240611, s);
            const LineBundle b = random::complete_bundle(rng, n);
            const SkewTriple c = random::skew_triple(rng, n);
            for (std::size_t k = 1; k <= n; ++k) {
                std::vector<Level2Term> terms;
                level2_mu_rhs(c, b, k, {}, {}, &terms);
                for (const auto& t : terms)
                    for (std::size_t i = 0; i < t.polyhedron.components.size(); ++i) {
                        const auto& pc = t.polyhedron.components[i];
                        const auto kind = t.classes[i].kind;
                        const bool band = kind == SurfaceKind::NodalAnnulus || kind == SurfaceKind::NodalMoebius;
                        counts = counts && orientation_count(pc) == (pc.cycle ? 2u : 1u);
                        counts = counts && (!band || t.classes[i].euler_characteristic == 0);
                        ++components;
                    }
            }
        }
    return {figures && counts && components > 0,
            std::string("figures ") + to_string(lc.kind) + " / " + to_string(rc.kind) + ", " + std::to_string(components) +
                " generated components checked"};
}

Outcome criterion_census() {
    bool ok = true;
    for (std::size_t N = 1; N <= 4; ++N)
        for (std::size_t k = 0; k <= N; ++k) {
            const std::size_t formula = oracle::binomial(N, k) * oracle::binomial(N, k) * oracle::factorial(k);
            ok = ok && enumerate_doombs(N, k).size() == formula && oracle::doomb_census(N, k) == formula;
        }
    const LineBundle tri(3, {{0, 1, 1, 1, 0}, {1, 2, 1, 1, 0}, {0, 2, 1, 1, 0}});
    // Every subset of the triangle's edges has at most one cycle.
    const std::size_t expected[] = {1, 3, 3, 1};
    for (std::size_t k = 0; k <= 3; ++k) ok = ok && enumerate_mixed_forests(tri, k).size() == expected[k];
    return {ok, "doomb counts N<=4, triangle forests 1,3,3,1"};
}

Outcome criterion_determinism() {
    bool ok = true;
    for (const auto& theorem : verify::theorems()) {
        verify::Options o;
        o.trials = 10;
        o.seed = 77;
        o.max_n = std::min<std::size_t>(verify::max_n_bound(theorem), 4);
        o.audit = true;
        const std::string a = verify::to_json(verify::run_campaign(theorem, o)).dump(2);
        const std::string b = verify::to_json(verify::run_campaign(theorem, o)).dump(2);
        ok = ok && a == b && verify::to_csv(verify::run_campaign(theorem, o)) == verify::to_csv(verify::run_campaign(theorem, o));
    }
    return {ok, "JSON and CSV reports byte-identical across reruns, all campaigns"};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"main-equivalence", criterion_main},
        {"determinant-reduction", criterion_det},
        {"forman", criterion_forman},
        {"matrix-tree", criterion_mtt},
        {"matrix-tree-doubled", criterion_mttd},
        {"lemma-suite", criterion_lemmas},
        {"level2-triple-equality", criterion_level2},
        {"polyhedron-classification", criterion_classification},
        {"census", criterion_census},
        {"determinism", criterion_determinism},
    };
    int failures = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
