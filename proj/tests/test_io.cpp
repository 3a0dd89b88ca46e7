#include <gtest/gtest.h>

#include "rankone/io/json.hpp"
#include "rankone/verify.hpp"

using namespace rankone;
using io::json;

TEST(Json, RationalsAndMatrices) {
    EXPECT_EQ(io::rational_from_json(json("-3/6")), Rational(-1, 2));
    EXPECT_EQ(io::rational_from_json(json(4)), Rational(4));
    EXPECT_THROW(io::rational_from_json(json(1.5)), validation_error);
    const Matrix m{{1, Rational(2, 3)}, {0, -1}};
    EXPECT_EQ(io::to_json(m), json::parse(R"([["1","2/3"],["0","-1"]])"));
    EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
    EXPECT_THROW(io::matrix_from_json(json::parse(R"([["1"],["1","2"]])")), validation_error);
}

TEST(Json, NCPolyUsesOneBasedLetters) {
    NCPoly p(3);
    p.add({0, 2}, Rational(1, 2));
    const json j = io::to_json(p);
    EXPECT_EQ(j["N"], 3);
    EXPECT_EQ(j["terms"][0]["word"], json::parse("[1, 3]"));
    EXPECT_EQ(io::ncpoly_from_json(j), p);
    EXPECT_THROW(io::ncpoly_from_json(json::parse(R"({"N": 2, "terms": [{"coeff": "1", "word": [3]}]})")), validation_error);
    EXPECT_THROW(io::ncpoly_from_json(json::parse(R"({"N": 2, "terms": [{"coeff": "1", "word": []}]})")), validation_error);
}

TEST(Json, InstanceRoundTrips) {
    for (auto kind : {io::InstanceKind::Rank1, io::InstanceKind::Bundle, io::InstanceKind::Mttd, io::InstanceKind::Level2}) {
        const io::InstanceFile f = io::generate_instance(kind, 5, kind == io::InstanceKind::Rank1 ? 3 : 4);
        const json j = io::to_json(f);
        const io::InstanceFile g = io::instance_from_json(json::parse(j.dump()));
        EXPECT_EQ(io::to_json(g), j) << io::to_string(kind);
    }
}

TEST(Json, SeedOnlyInstancesAreGenerated) {
    const auto a = io::instance_from_json(json::parse(R"({"kind": "bundle", "seed": 9})"));
    const auto b = io::instance_from_json(json::parse(R"({"kind": "bundle", "seed": 9, "payload": {"n": 4}})"));
    EXPECT_EQ(io::to_json(a), io::to_json(b));
    EXPECT_EQ(a.n(), 4u);
    EXPECT_THROW(io::instance_from_json(json::parse(R"({"kind": "bundle"})")), validation_error);
    EXPECT_THROW(io::instance_from_json(json::parse(R"({"kind": "level2", "seed": 1, "payload": {"n": 2}})")), validation_error);
}

TEST(Json, SchemaViolationsAreRejected) {
    const char* bad[] = {
        R"([])",
        R"({"kind": "graph", "seed": 1})",
        R"({"kind": "bundle", "payload": {"n": 2, "edges": [{"u": 1, "v": 1, "phi": "1", "c": "1"}]}})",
        R"({"kind": "bundle", "payload": {"n": 2, "edges": [{"u": 1, "v": 2, "phi": "0", "c": "1"}]}})",
        R"({"kind": "bundle", "payload": {"n": 2, "edges": [{"u": 1, "v": 3, "phi": "1", "c": "1"}]}})",
        R"({"kind": "mttd", "payload": {"n": 2, "edges": [{"u": 1, "v": 2, "phi": "1", "c": "1", "sign": "+"}]}})",
        R"({"kind": "rank1", "payload": {"n": 2, "N": 1, "e": [["1","0"]], "alpha": [["1","0"]], "P": {"N": 2, "terms": []}}})",
        R"({"kind": "level2", "payload": {"n": 3, "edges": [{"u": 1, "v": 2, "phi": "1", "c": "1"}],
            "triples": [{"ijk": [1, 2, 3], "c": "1"}]}})",
        R"({"kind": "level2", "payload": {"n": 3, "edges": [], "triples": [{"ijk": [1, 2, 2], "c": "1"}]}})",
    };
    for (const char* text : bad) EXPECT_THROW(io::instance_from_json(json::parse(text)), std::invalid_argument) << text;
}

TEST(Json, MttdSignsMustMatchPhi) {
    const auto ok = io::instance_from_json(json::parse(
        R"({"kind": "mttd", "payload": {"n": 2, "edges": [{"u": 1, "v": 2, "phi": "-1", "c": "3", "sign": "+"}]}})"));
    EXPECT_EQ(ok.mttd.c_plus(0, 1), Rational(3));
    EXPECT_TRUE(ok.mttd.c_minus.is_zero());
}

TEST(Verify, SmallCampaignsPass) {
    for (const auto& theorem : verify::theorems()) {
        verify::Options o;
        o.trials = 3;
        o.seed = 99;
        o.max_n = std::min<std::size_t>(verify::max_n_bound(theorem), 4);
        const auto c = verify::run_campaign(theorem, o);
        EXPECT_EQ(c.failed(), 0u) << theorem << "\n" << verify::to_json(c).dump(2);
    }
}

TEST(Verify, ReportsAreDeterministic) {
    verify::Options o;
    o.trials = 5;
    o.seed = 7;
    o.max_n = 4;
    o.audit = true;
    EXPECT_EQ(verify::to_json(verify::run_campaign("level2", o)).dump(), verify::to_json(verify::run_campaign("level2", o)).dump());
    EXPECT_EQ(verify::to_csv(verify::run_campaign("main", o)), verify::to_csv(verify::run_campaign("main", o)));
}

TEST(Verify, BoundsAreEnforced) {
    verify::Options o;
    o.max_n = 5;
    EXPECT_THROW(verify::run_campaign("main", o), validation_error);
    o.max_n = 7;
    EXPECT_THROW(verify::run_campaign("forman", o), validation_error);
    o.max_n = 3;
    o.trials = 0;
    EXPECT_THROW(verify::run_campaign("main", o), validation_error);
    o.trials = 1;
    EXPECT_THROW(verify::run_campaign("unknown", o), validation_error);
}
