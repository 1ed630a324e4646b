#include <doctest.h>

#include <string>

#include <json.hpp>

#include "intsig/bench.hpp"
#include "intsig/curve.hpp"
#include "intsig/verify.hpp"
#include "test_util.hpp"

using namespace intsig;

TEST_CASE("bench configuration parses from JSON with defaults") {
    const BenchConfig def = BenchConfig::from_json_text("{}");
    CHECK(def.n_classes == 20);
    CHECK(def.variants_per_class == 9);
    CHECK(def.sigma_list == std::vector<double>{0.0, 0.002, 0.005});
    CHECK(def.samples_per_curve == 2000);
    CHECK(def.M == 16);
    CHECK(def.scenario == Scenario::same_param);

    const BenchConfig c = BenchConfig::from_json_text(R"({
        "n_classes": 5, "variants_per_class": 2, "sigma_list": [0, 0.01],
        "samples_per_curve": 500, "M": 8, "seed": 9,
        "scenario": "reparam_shifted_start"})");
    CHECK(c.n_classes == 5);
    CHECK(c.variants_per_class == 2);
    CHECK(c.sigma_list == std::vector<double>{0.0, 0.01});
    CHECK(c.samples_per_curve == 500);
    CHECK(c.M == 8);
    CHECK(c.seed == 9);
    CHECK(c.scenario == Scenario::reparam_shifted_start);

    CHECK_THROWS_AS(BenchConfig::from_json_text("{nope"), ParseError);
    CHECK_THROWS_AS(BenchConfig::from_json_text(R"({"n_classes": "many"})"), ParseError);
    CHECK_THROWS_AS(BenchConfig::from_json_text(R"({"n_classes": 1})"), ParseError);
    CHECK_THROWS_AS(BenchConfig::from_json_text(R"({"scenario": "sideways"})"), ParseError);
}

TEST_CASE("scenario names round-trip") {
    for (Scenario sc :
         {Scenario::same_param, Scenario::reparam, Scenario::reparam_shifted_start})
        CHECK(scenario_from_string(to_string(sc)) == sc);
    CHECK_THROWS(scenario_from_string("unknown"));
}

TEST_CASE("a miniature benchmark run produces a well-formed report") {
    BenchConfig cfg;
    cfg.n_classes = 3;
    cfg.variants_per_class = 2;
    cfg.sigma_list = {0.0};
    cfg.samples_per_curve = 600;
    cfg.M = 16;
    cfg.seed = 3;
    cfg.scenario = Scenario::same_param;
    const BenchReport rep = run_bench(cfg, 2);
    REQUIRE(rep.rows.size() == 4);  // one row per method
    for (const auto& row : rep.rows) {
        CHECK(row.n_items == 6);
        CHECK(row.error_rate == 0.0);  // noiseless same-parameter variants match exactly
    }
    CHECK(rep.error(Scenario::same_param, 0.0, "J1-trace") == 0.0);
    CHECK(rep.error(Scenario::same_param, 0.0, "local_sig") == 0.0);
    CHECK_THROWS(rep.error(Scenario::reparam, 0.0, "J1-trace"));

    // the JSON report parses back and carries every row
    const nlohmann::json j = nlohmann::json::parse(rep.to_json_text());
    CHECK(j["rows"].size() == 4);
    CHECK(j["config"]["n_classes"] == 3);
    const std::string table = rep.table_text();
    CHECK(table.find("J1-trace") != std::string::npos);
    CHECK(table.find("same_param") != std::string::npos);

    // determinism: the same config gives the same rows
    const BenchReport rep2 = run_bench(cfg, 1);
    for (std::size_t k = 0; k < rep.rows.size(); ++k)
        CHECK(rep.rows[k].error_rate == rep2.rows[k].error_rate);
}

TEST_CASE("the quick verification battery passes on the reference build") {
    VerifyOptions opts;
    opts.quick = true;
    const VerifyReport rep = run_verify(opts);
    for (const auto& check : rep.checks) {
        CAPTURE(check.name);
        CAPTURE(check.residual);
        CAPTURE(check.detail);
        CHECK(check.pass);
    }
    CHECK(rep.all_pass());
    CHECK(rep.table_text().find("rotation") != std::string::npos);
}

TEST_CASE("a perturbed coefficient fails the battery and is named") {
    MutationSpec spec;
    spec.family = ExprFamily::aux3d;
    spec.expr = AUX_ZR020;
    spec.term = 1;
    VerifyOptions opts;
    opts.quick = true;
    opts.mutation = spec;
    const VerifyReport rep = run_verify(opts);
    CHECK_FALSE(rep.all_pass());
    // the failing rotation-invariance check points at the mutated expression
    bool named = false;
    for (const auto& check : rep.checks)
        if (!check.pass && check.detail == mutated_expression_name(spec)) named = true;
    CHECK(named);
}
