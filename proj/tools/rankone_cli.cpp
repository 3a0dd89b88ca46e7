#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rankone/io/json.hpp"
#include "rankone/verify.hpp"

namespace {

using namespace rankone;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_violation = 3;

struct Output {
    std::string path;
    bool csv = false;
    bool audit = false;

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path);
        if (!f) throw validation_error("cannot write " + path);
        f << text;
    }
};

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw validation_error(path + ": malformed JSON: " + e.what());
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw validation_error(what);
}

// ---- charpoly --------------------------------------------------------------

struct Evaluation {
    Matrix op;
    std::function<Rational(std::size_t, json*)> mu;
};

Evaluation evaluation_for(const io::InstanceFile& f) {
    switch (f.kind) {
        case io::InstanceKind::Rank1: {
            const auto& r = f.rank1;
            require(r.sys.n() <= 10 && r.sys.N() <= 10, "rank1 instances are limited to n <= 10 and N <= 10");
            return {assemble(r.sys, r.poly), [r](std::size_t k, json* audit) {
                        std::vector<DoombTerm> terms;
                        const Rational mu = mu_combinatorial(r.sys, r.poly, k, true, audit ? &terms : nullptr);
                        for (const auto& t : terms) audit->push_back(io::to_json(t));
                        return mu;
                    }};
        }
        case io::InstanceKind::Bundle:
        case io::InstanceKind::Mttd: {
            const bool mttd = f.kind == io::InstanceKind::Mttd;
            const LineBundle b = mttd ? mttd_bundle(f.mttd.c_minus, f.mttd.c_plus) : f.bundle;
            require(b.n() <= 10 && b.edge_count() <= 24, "bundle instances are limited to n <= 10 and 24 edges");
            const Matrix op = mttd ? mttd_operator(f.mttd.c_minus, f.mttd.c_plus) : laplacian(b);
            const auto m = f.mttd;
            return {op, [b, mttd, m](std::size_t k, json* audit) {
                        if (audit)
                            for_each_mixed_forest(b, k, [&](const MixedForest& mf) {
                                json x = io::to_json(mf, b);
                                x["contribution"] = forman_term(b, mf).str();
                                audit->push_back(x);
                            });
                        return mttd ? mttd_mu(m.c_minus, m.c_plus, k) : forman_mu(b, k);
                    }};
        }
        case io::InstanceKind::Level2: {
            const auto l = f.level2;
            require(l.bundle.n() <= 5, "level2 instances are limited to n <= 5");
            return {level2_laplacian(l.c, l.bundle), [l](std::size_t k, json* audit) {
                        std::vector<Level2Term> terms;
                        const Rational mu = level2_mu_rhs(l.c, l.bundle, k, {}, {}, audit ? &terms : nullptr);
                        for (const auto& t : terms) audit->push_back(io::to_json(t));
                        return mu;
                    }};
        }
    }
    throw validation_error("unknown instance kind");
}

int cmd_charpoly(const std::string& instance_path, const std::string& method, const Output& out, bool timing) {
    const auto start = std::chrono::steady_clock::now();
    const io::InstanceFile f = io::instance_from_json(read_json_file(instance_path));
    const Evaluation ev = evaluation_for(f);
    const std::size_t n = f.n();
    const bool want_oracle = method != "combinatorial", want_comb = method != "oracle";

    std::vector<Rational> mu;
    json audit = json::array();
    if (want_comb)
        for (std::size_t k = 0; k <= n; ++k) mu.push_back(ev.mu(k, out.audit ? &audit : nullptr));
    const Polynomial oracle = want_oracle ? char_poly(ev.op) : Polynomial();
    const Polynomial comb = want_comb ? poly_from_mu(mu) : Polynomial();

    json report = {{"kind", io::to_string(f.kind)}, {"n", n}, {"method", method}};
    if (want_oracle) report["oracle"] = oracle.str();
    if (want_comb) report["combinatorial"] = comb.str();
    bool all_equal = true;
    std::ostringstream csv;
    csv << "k,combinatorial,oracle,equal\n";
    json rows = json::array();
    for (std::size_t k = 0; k <= n; ++k) {
        json row = {{"k", k}};
        const Rational o = k % 2 ? -oracle.coeff(n - k) : oracle.coeff(n - k);
        if (want_comb) row["combinatorial"] = mu[k].str();
        if (want_oracle) row["oracle"] = o.str();
        if (want_comb && want_oracle) {
            row["equal"] = mu[k] == o;
            all_equal = all_equal && mu[k] == o;
        }
        csv << k << ',' << (want_comb ? mu[k].str() : "") << ',' << (want_oracle ? o.str() : "") << ','
            << (want_comb && want_oracle ? (mu[k] == o ? "true" : "false") : "") << '\n';
        rows.push_back(row);
    }
    report["coefficients"] = rows;
    if (out.audit) {
        report["instance"] = io::to_json(f);
        report["audit"] = audit;
    }
    if (timing)
        report["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out.write(out.csv ? csv.str() : report.dump(2) + "\n");
    if (!all_equal) {
        std::cerr << "theorem violation: combinatorial and oracle coefficients differ\n";
        return exit_violation;
    }
    return exit_ok;
}

// ---- verify ----------------------------------------------------------------

std::size_t default_trials(const std::string& theorem) {
    if (theorem == "main") return 200;
    if (theorem == "forman" || theorem == "lemmas") return 100;
    if (theorem == "level2") return 30;
    return 50;
}

int cmd_verify(const std::string& theorem, verify::Options o, bool trials_set, bool max_n_set, const Output& out,
               const std::string& dump_dir, bool timing) {
    if (!trials_set) o.trials = default_trials(theorem);
    if (!max_n_set) o.max_n = verify::max_n_bound(theorem);
    o.audit = out.audit;
    const auto start = std::chrono::steady_clock::now();
    const verify::Campaign c = verify::run_campaign(theorem, o);
    json report = verify::to_json(c);
    if (timing)
        report["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out.write(out.csv ? verify::to_csv(c) : report.dump(2) + "\n");
    if (c.failed() == 0) return exit_ok;

    std::filesystem::create_directories(dump_dir);
    for (const auto& t : c.trials) {
        if (t.passed()) continue;
        json dump = t.instance;
        dump["theorem"] = theorem;
        dump["trial"] = t.index;
        dump["reproduce"] = "rankone verify " + theorem + " --seed " + std::to_string(o.seed) + " --trials " +
                            std::to_string(t.index + 1) + " --min-n " + std::to_string(o.min_n) + " --max-n " + std::to_string(o.max_n);
        dump["report"] = verify::to_json(t, false);
        const auto path = std::filesystem::path(dump_dir) /
                          ("rankone-" + theorem + "-seed" + std::to_string(o.seed) + "-trial" + std::to_string(t.index) + ".json");
        std::ofstream(path) << dump.dump(2) << '\n';
        std::cerr << "trial " << t.index << " failed; instance written to " << path.string() << '\n';
    }
    return exit_violation;
}

// ---- enumerate -------------------------------------------------------------

struct EnumerateArgs {
    std::string instance;
    std::size_t N = 0, n = 0, k = 0, complete = 0;
    std::string doomb;
    bool forests_only = false;
};

void emit(std::ostream& os, const json& j) { os << j.dump() << '\n'; }

void enumerate_doombs(const EnumerateArgs& a, const Output& out, std::ostream& os) {
    if (!a.instance.empty()) {
        const auto f = io::instance_from_json(read_json_file(a.instance));
        require(f.kind == io::InstanceKind::Rank1, "enumerate doombs: the instance must be of kind rank1");
        const auto& r = f.rank1;
        require(r.sys.N() <= 8 && a.k <= r.sys.N(), "enumerate doombs: needs N <= 8 and k <= N");
        const WeightTable w = weight_table(r.sys, r.poly);
        for_each_doomb(r.sys.N(), a.k, support(w), [&](const std::vector<DEdge>& e) {
            json x = {{"edges", io::to_json(Doomb(r.sys.N(), e))}};
            if (out.audit) {
                const Rational wt = doomb_weight(e, w), gd = edge_gram_det(e, r.sys);
                x["weight"] = wt.str();
                x["gram_det"] = gd.str();
                x["contribution"] = (wt * gd).str();
            }
            emit(os, x);
        });
        return;
    }
    require(a.N >= 1 && a.N <= 8 && a.k <= a.N, "enumerate doombs: needs 1 <= N <= 8 and k <= N");
    for_each_doomb(a.N, a.k, all_edges(a.N),
                   [&](const std::vector<DEdge>& e) { emit(os, {{"edges", io::to_json(Doomb(a.N, e))}}); });
}

void enumerate_forests(const EnumerateArgs& a, const Output& out, std::ostream& os) {
    LineBundle b;
    if (!a.instance.empty()) {
        const auto f = io::instance_from_json(read_json_file(a.instance));
        require(f.kind == io::InstanceKind::Bundle || f.kind == io::InstanceKind::Mttd,
                "enumerate forests: the instance must be of kind bundle or mttd");
        b = f.kind == io::InstanceKind::Bundle ? f.bundle : mttd_bundle(f.mttd.c_minus, f.mttd.c_plus);
    } else {
        require(a.complete >= 1 && a.complete <= 7, "enumerate forests: --complete needs 1 <= n <= 7");
        Matrix c(a.complete, a.complete);
        for (std::size_t i = 0; i < a.complete; ++i)
            for (std::size_t j = 0; j < a.complete; ++j)
                if (i != j) c(i, j) = 1;
        b = trivial_bundle(c);
    }
    require(b.n() <= 8 && b.edge_count() <= 28 && a.k <= b.n(), "enumerate forests: needs n <= 8, 28 edges and k <= n");
    for_each_mixed_forest(
        b, a.k,
        [&](const MixedForest& f) {
            json x = io::to_json(f, b);
            if (out.audit) x["contribution"] = forman_term(b, f).str();
            emit(os, x);
        },
        a.forests_only);
}

std::size_t pair_from_json(const json& j, std::size_t n) {
    require(j.is_array() && j.size() == 2, "doomb: each endpoint is a pair [i, j]");
    const std::size_t i = io::detail::index1(j[0], n, "doomb"), k = io::detail::index1(j[1], n, "doomb");
    require(i != k, "doomb: a pair needs two distinct indices");
    return pair_index(n, std::min(i, k), std::max(i, k));
}

json polyhedron_line(std::size_t n, const Doomb& g) {
    const Polyhedron2 h = doomb_to_polyhedron(n, g);
    json classes = json::array();
    for (const auto& pc : h.components) {
        json c = io::to_json(classify_component(pc));
        c["orientations"] = orientation_count(pc);
        classes.push_back(c);
    }
    return {{"doomb", io::pair_doomb_json(n, g)}, {"faces", io::to_json(h)}, {"classes", classes}};
}

void enumerate_polyhedra(const EnumerateArgs& a, const Output& out, std::ostream& os) {
    if (!a.instance.empty()) {
        const auto f = io::instance_from_json(read_json_file(a.instance));
        require(f.kind == io::InstanceKind::Level2, "enumerate polyhedra: the instance must be of kind level2");
        const auto& l = f.level2;
        require(l.bundle.n() <= 5 && a.k <= l.bundle.n(), "enumerate polyhedra: needs n <= 5 and k <= n");
        std::vector<Level2Term> terms;
        level2_mu_rhs(l.c, l.bundle, a.k, {}, {}, &terms);
        for (const auto& t : terms) {
            json x = polyhedron_line(l.bundle.n(), t.graph);
            if (out.audit) {
                const json full = io::to_json(t);
                for (const char* key : {"face_weight", "det_MH", "contribution"}) x[key] = full[key];
            }
            emit(os, x);
        }
        return;
    }
    if (!a.doomb.empty()) {
        require(a.n >= 3 && a.n <= 8, "enumerate polyhedra: --doomb needs 3 <= n <= 8");
        json j;
        try {
            j = json::parse(a.doomb);
        } catch (const json::parse_error& e) {
            throw validation_error(std::string("doomb: malformed JSON: ") + e.what());
        }
        require(j.is_array(), "doomb: expected [[tail_pair, head_pair], ...]");
        std::vector<DEdge> edges;
        for (const auto& e : j) {
            require(e.is_array() && e.size() == 2, "doomb: each edge is [tail_pair, head_pair]");
            edges.emplace_back(pair_from_json(e[0], a.n), pair_from_json(e[1], a.n));
        }
        emit(os, polyhedron_line(a.n, Doomb(pair_count(a.n), edges)));
        return;
    }
    require(a.n >= 3 && a.n <= 5 && a.k <= 4, "enumerate polyhedra: needs 3 <= n <= 5 and k <= 4");
    const std::size_t N = pair_count(a.n);
    std::vector<DEdge> allowed;
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = 0; q < N; ++q) {
            const auto [i, j] = pair_of(a.n, p);
            const auto [x, y] = pair_of(a.n, q);
            const int shared = (i == x) + (i == y) + (j == x) + (j == y);
            if (shared == 1) allowed.emplace_back(p, q);
        }
    for_each_doomb(N, a.k, allowed, [&](const std::vector<DEdge>& e) { emit(os, polyhedron_line(a.n, Doomb(N, e))); });
}

int cmd_enumerate(const std::string& what, const EnumerateArgs& a, const Output& out) {
    std::ostringstream os;
    if (what == "doombs") enumerate_doombs(a, out, os);
    else if (what == "forests") enumerate_forests(a, out, os);
    else enumerate_polyhedra(a, out, os);
    out.write(os.str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact characteristic polynomials of rank-one assemblies, with combinatorial cross-checks"};
    app.require_subcommand(1);

    Output out;
    bool timing = false;
    auto common = [&](CLI::App* sub) {
        sub->add_flag("--audit", out.audit, "Include per-term contributions and the instance echo");
        sub->add_option("--out", out.path, "Write the report to FILE instead of stdout");
    };

    std::string instance_path, method = "both";
    auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial of an instance");
    charpoly->add_option("--instance", instance_path, "Instance JSON file")->required();
    charpoly->add_option("--method", method, "oracle, combinatorial or both")
        ->check(CLI::IsMember({"oracle", "combinatorial", "both"}));
    charpoly->add_flag("--csv", out.csv, "Coefficient table as CSV");
    charpoly->add_flag("--timing", timing, "Add elapsed time to the report");
    common(charpoly);

    std::string theorem;
    verify::Options vo;
    std::string dump_dir = ".";
    auto verify_options = [&](CLI::App* sub) {
        sub->add_option("--trials", vo.trials, "Number of random trials");
        sub->add_option("--min-n", vo.min_n, "Smallest instance size");
        sub->add_option("--max-n", vo.max_n, "Largest instance size");
        sub->add_option("--seed", vo.seed, "Campaign seed (default: $RANKONE_SEED, else 0)")->envname("RANKONE_SEED");
        sub->add_option("--dump-dir", dump_dir, "Directory for failing instances");
        sub->add_flag("--csv", out.csv, "Coefficient tables as CSV");
        sub->add_flag("--timing", timing, "Add elapsed time to the report");
        common(sub);
    };
    auto* verify_cmd = app.add_subcommand("verify", "Randomized campaign for one identity");
    verify_cmd->add_option("theorem", theorem, "main, det, forman, mtt, mttd, level2 or lemmas")
        ->required()
        ->check(CLI::IsMember(verify::theorems()));
    verify_options(verify_cmd);
    auto* lemmas_cmd = app.add_subcommand("lemmas", "Same as 'verify lemmas'");
    verify_options(lemmas_cmd);

    std::string what;
    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "Stream combinatorial objects as NDJSON");
    enumerate->add_option("what", what, "doombs, forests or polyhedra")
        ->required()
        ->check(CLI::IsMember({"doombs", "forests", "polyhedra"}));
    enumerate->add_option("--instance", ea.instance, "Instance JSON file (rank1, bundle/mttd or level2)");
    enumerate->add_option("--N", ea.N, "Alphabet size for doombs");
    enumerate->add_option("--n", ea.n, "Vertex count for polyhedra");
    enumerate->add_option("--k", ea.k, "Number of edges");
    enumerate->add_option("--complete", ea.complete, "Forests of the complete graph on this many vertices");
    enumerate->add_option("--doomb", ea.doomb, "Single DOOMB on pairs, e.g. [[[1,2],[1,3]]]");
    enumerate->add_flag("--forests-only", ea.forests_only, "Skip components with a cycle");
    common(enumerate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (charpoly->parsed()) return cmd_charpoly(instance_path, method, out, timing);
        if (verify_cmd->parsed() || lemmas_cmd->parsed()) {
            CLI::App* sub = verify_cmd->parsed() ? verify_cmd : lemmas_cmd;
            return cmd_verify(lemmas_cmd->parsed() ? "lemmas" : theorem, vo, sub->count("--trials") > 0,
                              sub->count("--max-n") > 0, out, dump_dir, timing);
        }
        return cmd_enumerate(what, ea, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const structural_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
