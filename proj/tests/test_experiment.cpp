#include "bailout/experiment.hpp"
#include "bailout/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using namespace bailout;

namespace {

ExperimentConfig example1_config() {
    ExperimentConfig cfg;
    cfg.instance_path = std::filesystem::path(BAILOUT_SOURCE_DIR) / "docs" / "example1.instance";
    cfg.algorithms = {"greedy", "wealth"};
    cfg.k_values = {0, 1};
    cfg.samples = 2;
    cfg.workers = 1;
    cfg.timing = false;
    return cfg;
}

const ResultRow &find(const ResultsTable &t, const std::string &alg, std::size_t k) {
    for (const auto &r : t.rows)
        if (r.algorithm == alg && r.k == k)
            return r;
    FAIL("row not found: " << alg << " k=" << k);
    return t.rows.front();
}

ExperimentConfig er_config() {
    ExperimentConfig cfg;
    GeneratorSpec g;
    g.kind = GeneratorKind::RandomEr;
    g.n = 12;
    g.edge_probability = 0.3;
    g.seed = 4;
    cfg.generator = g;
    cfg.algorithms = {"greedy", "rounding", "dependent-rounding", "pagerank", "random"};
    cfg.k_values = {1, 2};
    cfg.samples = 4;
    cfg.trials = 40;
    cfg.seeds = {0, 1};
    cfg.workers = 1;
    cfg.timing = false;
    return cfg;
}

} // namespace

TEST_CASE("two-bank budget sweep") {
    const auto t = run_comparison(example1_config());
    CHECK(t.rows.size() == 4);
    CHECK(find(t, "greedy", 1).mean == doctest::Approx(2.5));
    CHECK(find(t, "greedy", 0).mean == doctest::Approx(5.0 / 6.0));
    CHECK(find(t, "wealth", 1).mean == doctest::Approx(2.5));
    CHECK(find(t, "greedy", 1).opt_r.value() == doctest::Approx(2.5));
    CHECK(find(t, "greedy", 1).spent == 1.0);
    CHECK_FALSE(has_failures(t));
}

TEST_CASE("path instance separates greedy from the wealth order") {
    ExperimentConfig cfg;
    GeneratorSpec g;
    g.kind = GeneratorKind::PathThreshold;
    g.n = 20;
    cfg.generator = g;
    cfg.algorithms = {"greedy", "wealth"};
    cfg.samples = 1;
    cfg.workers = 1;
    const auto t = run_comparison(cfg);
    CHECK(find(t, "greedy", 1).mean / find(t, "wealth", 1).mean > 5.0);
}

TEST_CASE("runs are deterministic and respect the relaxation bound") {
    const auto cfg = er_config();
    const auto a = run_comparison(cfg);
    const auto b = run_comparison(cfg);
    CHECK(format_results(a) == format_results(b));
    CHECK(a.rows.size() == 2 * 2 * 5);
    for (const auto &r : a.rows) {
        CHECK(r.status == "ok");
        REQUIRE(r.opt_r.has_value());
        CHECK(r.wall_ms == 0.0);
        if (r.algorithm == "rounding") {
            // default rounding may overspend by at most the budget itself
            CHECK(r.spent <= 2 * r.budget + 1e-7);
            continue;
        }
        CHECK(r.mean <= *r.opt_r + 1e-7);
        CHECK(r.spent <= r.budget + 1e-7);
    }
    auto strict = cfg;
    strict.strict_rounding = true;
    for (const auto &r : run_comparison(strict).rows) {
        CHECK(r.mean <= *r.opt_r + 1e-7);
        CHECK(r.spent <= r.budget + 1e-7);
    }
    auto parallel = cfg;
    parallel.workers = 3;
    CHECK(format_results(run_comparison(parallel)) == format_results(a));
}

TEST_CASE("shared batches depend only on seed and budget level") {
    const auto inst = resolve_instance(er_config());
    const auto a = shared_batch(inst, 3, 2, 5);
    CHECK(a == shared_batch(inst, 3, 2, 5));
    CHECK(a != shared_batch(inst, 3, 1, 5));
    CHECK(a != shared_batch(inst, 4, 2, 5));
}

TEST_CASE("fairness sweep") {
    auto cfg = er_config();
    cfg.k_values = {2};
    cfg.seeds = {0};
    cfg.fairness = FairnessKind::GC;
    cfg.g_values = {0.2, 1.0};
    const auto t = run_fairness_sweep(cfg);
    const ResultRow *lp = nullptr;
    for (const auto &r : t.rows)
        if (r.algorithm == "lp")
            lp = &r;
    REQUIRE(lp != nullptr);
    for (const auto &r : t.rows) {
        if (r.algorithm != "fair-lp")
            continue;
        REQUIRE(r.g.has_value());
        REQUIRE(r.gini.has_value());
        CHECK(*r.gini <= *r.g + 1e-6);
        CHECK(r.mean <= lp->mean + 1e-7);
        if (*r.g == 1.0)
            CHECK(r.mean == doctest::Approx(lp->mean).epsilon(1e-9));
    }
    for (const auto &r : t.rows)
        if (r.algorithm == "fair-rounding")
            CHECK(r.status.rfind("error", 0) != 0);
}

TEST_CASE("price of fairness at a slack bound is one") {
    auto cfg = er_config();
    cfg.k_values = {2};
    cfg.seeds = {0};
    cfg.g_values = {1.0};
    const auto t = run_pof_curve(cfg);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].pof.value() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("configuration errors") {
    auto cfg = example1_config();
    cfg.algorithms = {"nonsense"};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = example1_config();
    cfg.k_values.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = example1_config();
    cfg.instance_path.reset();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = example1_config();
    cfg.objective.name = "custom";
    CHECK_THROWS_AS(run_comparison(cfg), InvalidInput);
    cfg = example1_config();
    cfg.samples = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_NOTHROW(example1_config().validate());
}

TEST_CASE("solver failures become error rows") {
    auto cfg = example1_config();
    cfg.algorithms = {"brute-force"};
    cfg.brute_force_cap = 0;
    const auto t = run_comparison(cfg);
    CHECK(has_failures(t));
    CHECK(std::isnan(t.rows.back().mean));
}
