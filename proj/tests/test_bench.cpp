#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "coa/bench.hpp"

using namespace coa;
using namespace coa::bench;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigDir = COA_CONFIG_DIR;

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("coa_bench_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path small_instance(const fs::path& dir) {
    GenOptions g;
    g.seed = 4;
    g.n_products = 2;
    g.n_periods = 3;
    g.n_resources = 1;
    g.out = dir / "instance.json";
    std::ostringstream log;
    cmd_gen(g, log);
    return g.out;
}

RunReport report_with(double cost) {
    RunReport r;
    r.best_cost = cost;
    return r;
}

} // namespace

TEST(Aggregate, PopulationStdMatchesRecompute) {
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RunReport> reps;
        const int n = static_cast<int>(rng.uniform_int(1, 30));
        for (int k = 0; k < n; ++k) reps.push_back(report_with(rng.uniform(-1e3, 1e3)));
        const auto a = aggregate(Algo::ga, reps);
        double mean = 0;
        for (const auto& r : reps) mean += r.best_cost / n;
        double var = 0;
        for (const auto& r : reps) var += (r.best_cost - mean) * (r.best_cost - mean) / n;
        EXPECT_EQ(a.runs, n);
        EXPECT_NEAR(a.mean_best_cost, mean, 1e-9 * (1 + std::abs(mean)));
        EXPECT_NEAR(a.std_best_cost, std::sqrt(var), 1e-9 * (1 + std::sqrt(var)));
        double lo = reps[0].best_cost;
        for (const auto& r : reps) lo = std::min(lo, r.best_cost);
        EXPECT_EQ(a.min_best_cost, lo);
    }
    const std::vector<RunReport> one{report_with(3.5)};
    EXPECT_EQ(aggregate(Algo::coa, one).std_best_cost, 0.0);
    EXPECT_EQ(aggregate(Algo::coa, one).mean_best_cost, 3.5);
}

TEST(Algo, ParseRoundTrip) {
    EXPECT_EQ(parse_algo("coa"), Algo::coa);
    EXPECT_EQ(parse_algo(to_string(Algo::ga)), Algo::ga);
    EXPECT_THROW(parse_algo("pso"), ConfigError);
}

TEST(Compare, ProducesBothAlgorithmsOnOneInstance) {
    const auto dir = scratch("compare");
    CompareOptions opt;
    opt.problem.instance = small_instance(dir);
    opt.runs = 20;
    opt.parallel = 4;
    opt.out_dir = dir;
    std::ostringstream log;
    const auto out = cmd_compare(opt, log);
    EXPECT_EQ(out.coa_runs.size(), 20u);
    EXPECT_EQ(out.ga_runs.size(), 20u);
    EXPECT_EQ(out.coa.runs, 20);
    EXPECT_EQ(out.ga.runs, 20);

    const auto runs = io::read_csv(dir / "runs.csv");
    ASSERT_EQ(runs.rows.size(), 40u);
    const auto hash = runs.rows[0][runs.column("instance_hash")];
    for (const auto& r : runs.rows) EXPECT_EQ(r[runs.column("instance_hash")], hash);
    EXPECT_EQ(hash, io::instance_hash(io::read_instance(*opt.problem.instance)));

    const auto agg = io::read_csv(dir / "aggregate.csv");
    ASSERT_EQ(agg.rows.size(), 2u);
    EXPECT_EQ(agg.rows[0][0], "coa");
    EXPECT_EQ(agg.rows[1][0], "ga");

    const auto summary = io::parse_json_file(dir / "summary.json");
    ASSERT_EQ(summary["algorithms"].size(), 2u);
    EXPECT_EQ(summary["algorithms"][0]["algo"], "coa");
    EXPECT_EQ(summary["algorithms"][1]["algo"], "ga");
    for (const auto& a : summary["algorithms"]) EXPECT_EQ(a["per_run"].size(), 20u);
    EXPECT_NE(log.str().find("deviation"), std::string::npos);

    opt.runs = 0;
    EXPECT_THROW(cmd_compare(opt, log), ConfigError);
}

TEST(Compare, ParallelismDoesNotChangeResults) {
    const auto dir = scratch("parallel");
    CompareOptions opt;
    opt.problem.objective = "rastrigin";
    opt.problem.dim = 3;
    opt.runs = 6;
    opt.out_dir = dir / "serial";
    std::ostringstream log;
    cmd_compare(opt, log);
    opt.parallel = 3;
    opt.out_dir = dir / "threads";
    cmd_compare(opt, log);
    for (const char* f : {"runs.csv", "traces.csv", "aggregate.csv"})
        EXPECT_EQ(io::read_text(dir / "serial" / f), io::read_text(dir / "threads" / f)) << f;
}

TEST(Solve, RequiresInstanceForLotSizing) {
    SolveOptions opt;
    opt.out_dir = scratch("noinst");
    std::ostringstream log;
    try {
        cmd_solve(opt, log);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("--instance"), std::string::npos);
    }
}

TEST(Solve, WritesReadableFiles) {
    const auto dir = scratch("solve");
    SolveOptions opt;
    opt.problem.instance = small_instance(dir);
    opt.seed = 5;
    opt.out_dir = dir;
    std::ostringstream log;
    const auto rec = cmd_solve(opt, log);

    const auto report = io::read_csv(dir / "report.csv");
    ASSERT_EQ(report.rows.size(), 1u);
    EXPECT_EQ(io::parse_double(report.rows[0][report.column("best_cost")]), rec.report.best_cost);
    const auto trace = io::read_csv(dir / "trace.csv");
    EXPECT_EQ(trace.rows.size(), rec.result.trace.size());
    const auto best = io::read_csv(dir / "best.csv");
    ASSERT_EQ(best.rows.size(), rec.result.best_habitat.size());
    for (std::size_t j = 0; j < best.rows.size(); ++j)
        EXPECT_EQ(io::parse_double(best.rows[j][1]), rec.result.best_habitat[j]);
    const auto timing = io::parse_json_file(dir / "timing.json");
    EXPECT_TRUE(timing.contains("wall_time_ms"));
}

TEST(Sweep, BundledSpecHasFiveRows) {
    const auto dir = scratch("sweep");
    SweepOptions opt;
    opt.spec = kConfigDir / "population_sweep.json";
    opt.problem.objective = "sphere";
    opt.problem.dim = 2;
    opt.out_dir = dir;
    std::ostringstream log;
    const auto rows = cmd_sweep(opt, log);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0].config.max_living, 30);
    EXPECT_EQ(rows[3].config.n_initial, 30);
    EXPECT_EQ(rows[4].config.k_clusters, 2);
    const auto csv = io::read_csv(dir / "sweep.csv");
    EXPECT_EQ(csv.rows.size(), 5u);
    const auto summary = io::parse_json_file(dir / "sweep_summary.json");
    ASSERT_EQ(summary["rows"].size(), 5u);
    for (const auto& r : summary["rows"]) {
        EXPECT_TRUE(r.contains("cost"));
        EXPECT_TRUE(r.contains("total_time_s"));
    }
}

TEST(Sweep, EmptySpecGivesEmptyTable) {
    const auto dir = scratch("sweep_empty");
    io::write_text(dir / "spec.json", R"({"schema_version":1,"kind":"sweep","runs":2,"variants":[]})");
    SweepOptions opt;
    opt.spec = dir / "spec.json";
    opt.out_dir = dir;  // no instance needed: nothing runs
    std::ostringstream log;
    EXPECT_TRUE(cmd_sweep(opt, log).empty());
    const auto csv = io::read_csv(dir / "sweep.csv");
    EXPECT_TRUE(csv.rows.empty());
    EXPECT_EQ(csv.header.size(), 8u);
}

TEST(Sweep, UnknownOverrideIsRejectedUpFront) {
    const auto dir = scratch("sweep_bad");
    io::write_text(dir / "spec.json",
                   R"({"schema_version":1,"runs":1,"variants":[{"label":"x","overrides":{"max_livng":3}}]})");
    SweepOptions opt;
    opt.spec = dir / "spec.json";
    opt.out_dir = dir;
    std::ostringstream log;
    try {
        cmd_sweep(opt, log);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("max_livng"), std::string::npos);
    }
    EXPECT_FALSE(fs::exists(dir / "sweep.csv"));
}

TEST(Sweep, DefaultVariantMatchesSolve) {
    const auto dir = scratch("sweep_solve");
    const auto inst = small_instance(dir);
    io::write_text(dir / "spec.json",
                   R"({"schema_version":1,"runs":1,"base_seed":7,"variants":[{"label":"plain"}]})");
    SweepOptions sw;
    sw.spec = dir / "spec.json";
    sw.problem.instance = inst;
    sw.out_dir = dir / "sweep";
    std::ostringstream log;
    const auto rows = cmd_sweep(sw, log);

    SolveOptions so;
    so.problem.instance = inst;
    so.seed = 7;
    so.out_dir = dir / "solve";
    const auto rec = cmd_solve(so, log);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].min_best_cost, rec.report.best_cost);
    EXPECT_EQ(rows[0].records[0].result.best_habitat, rec.result.best_habitat);
}

TEST(Oracle, CrossChecksAgainstSolveReport) {
    const auto dir = scratch("oracle");
    GenOptions g;
    g.seed = 2;
    g.n_products = 1;
    g.n_periods = 2;
    g.n_resources = 1;
    g.ranges.demand = {1, 5};
    g.ranges.integral_demand = true;
    g.out = dir / "instance.json";
    std::ostringstream log;
    cmd_gen(g, log);

    OracleOptions o;
    o.instance = g.out;
    o.out_dir = dir;
    cmd_oracle(o, log);
    EXPECT_FALSE(io::parse_json_file(dir / "oracle.json").contains("cross_check"));

    SolveOptions so;
    so.problem.instance = g.out;
    so.out_dir = dir;
    so.config = kConfigDir / "lot_sizing.json";
    const auto rec = cmd_solve(so, log);
    const auto res = cmd_oracle(o, log);
    const auto j = io::parse_json_file(dir / "oracle.json");
    ASSERT_TRUE(j.contains("cross_check"));
    EXPECT_EQ(j["cross_check"]["coa_raw_objective"].get<double>(), rec.report.raw_objective_of_best);
    EXPECT_EQ(j["cross_check"]["gap"].get<double>(), rec.report.raw_objective_of_best - res.best_cost);
    EXPECT_EQ(j["instance_hash"], io::instance_hash(io::read_instance(g.out)));
}

TEST(Gen, DeterministicAndRangeChecked) {
    const auto dir = scratch("gen");
    GenOptions g;
    g.seed = 12;
    g.out = dir / "a.json";
    std::ostringstream log;
    cmd_gen(g, log);
    g.out = dir / "b.json";
    cmd_gen(g, log);
    EXPECT_EQ(io::read_text(dir / "a.json"), io::read_text(dir / "b.json"));
    const auto in = io::read_instance(dir / "a.json");
    EXPECT_EQ(in.n_products, 3u);
    EXPECT_EQ(in.n_periods, 5u);
    EXPECT_EQ(in.n_resources, 2u);

    lot::GenerationRanges r;
    set_range(r, "demand", "1:5");
    EXPECT_EQ(r.demand.min, 1.0);
    EXPECT_EQ(r.demand.max, 5.0);
    EXPECT_THROW(set_range(r, "demand", "5:1"), ConfigError);
    EXPECT_THROW(set_range(r, "demand", "5"), ConfigError);
    EXPECT_THROW(set_range(r, "colour", "1:2"), ConfigError);
}
