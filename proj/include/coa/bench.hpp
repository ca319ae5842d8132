#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "coa/coa.hpp"
#include "coa/exact_oracle.hpp"
#include "coa/ga.hpp"
#include "coa/io.hpp"
#include "coa/lot_sizing.hpp"
#include "coa/objectives.hpp"

namespace coa::bench {

namespace fs = std::filesystem;
using io::json;
using io::ordered_json;

enum class Algo { coa, ga };

inline const char* to_string(Algo a) { return a == Algo::coa ? "coa" : "ga"; }

inline Algo parse_algo(const std::string& s) {
    if (s == "coa") return Algo::coa;
    if (s == "ga") return Algo::ga;
    throw ConfigError("--algo must be 'coa' or 'ga', got '" + s + "'");
}

// ---------------------------------------------------------------------------
// Problems
// ---------------------------------------------------------------------------

/// What a run minimizes: an analytic function or a penalized lot-sizing instance.
class Problem {
public:
    static Problem builtin(const std::string& name, std::size_t dim) {
        auto b = make_builtin(name, dim);
        Problem p(b.space);
        p.name_ = name;
        p.builtin_ = std::move(b);
        return p;
    }

    static Problem lot_sizing(lot::Instance instance, double penalty_weight) {
        if (!(penalty_weight > 0.0)) throw ConfigError("penalty_weight must be > 0");
        Problem p(lot::search_space(instance));
        p.name_ = "lot_sizing";
        p.hash_ = io::instance_hash(instance);
        p.instance_ = std::move(instance);
        p.penalty_weight_ = penalty_weight;
        return p;
    }

    const std::string& name() const { return name_; }
    const SearchSpace& space() const { return space_; }
    /// Content hash of the instance, or "-" for analytic objectives.
    const std::string& instance_hash() const { return hash_; }
    const std::optional<lot::Instance>& instance() const { return instance_; }
    double penalty_weight() const { return penalty_weight_; }

    double cost(std::span<const double> h) const {
        if (builtin_) return (*builtin_)(h);
        return lot::penalized_fitness(h, *instance_, penalty_weight_).penalized_cost;
    }

    struct Assessment {
        double raw_objective;
        bool feasible;
    };

    Assessment assess(std::span<const double> h) const {
        if (builtin_) return {(*builtin_)(h), true};
        const auto e = lot::penalized_fitness(h, *instance_, penalty_weight_);
        return {e.raw_objective, e.feasible};
    }

private:
    explicit Problem(SearchSpace space) : space_(std::move(space)) {}

    std::string name_;
    SearchSpace space_;
    std::string hash_ = "-";
    std::optional<BuiltinObjective> builtin_;
    std::optional<lot::Instance> instance_;
    double penalty_weight_ = lot::kDefaultPenaltyWeight;
};

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct RunReport {
    Algo algo = Algo::coa;
    std::uint64_t seed = 0;
    std::string instance_hash;
    double best_cost = 0.0;
    double raw_objective_of_best = 0.0;
    bool feasible = true;
    int iterations_used = 0;
    Termination terminated_by = Termination::max_iterations;
    double wall_time_ms = 0.0;
};

struct AggregateReport {
    Algo algo = Algo::coa;
    int runs = 0;
    double mean_best_cost = 0.0;
    double std_best_cost = 0.0;  // population standard deviation
    double min_best_cost = 0.0;
    double mean_wall_time_ms = 0.0;
};

inline AggregateReport aggregate(Algo algo, std::span<const RunReport> reports) {
    AggregateReport a;
    a.algo = algo;
    a.runs = static_cast<int>(reports.size());
    if (reports.empty()) return a;
    const double n = static_cast<double>(reports.size());
    double sum = 0.0, time = 0.0;
    a.min_best_cost = reports.front().best_cost;
    for (const auto& r : reports) {
        sum += r.best_cost;
        time += r.wall_time_ms;
        a.min_best_cost = std::min(a.min_best_cost, r.best_cost);
    }
    a.mean_best_cost = sum / n;
    double ss = 0.0;
    for (const auto& r : reports) ss += (r.best_cost - a.mean_best_cost) * (r.best_cost - a.mean_best_cost);
    a.std_best_cost = std::sqrt(ss / n);
    a.mean_wall_time_ms = time / n;
    return a;
}

struct RunRecord {
    RunReport report;
    RunResult result;
};

/// One seeded run of `algo` on `problem`; the seed replaces the config's.
inline RunRecord run_once(Algo algo, const Problem& problem, const io::RunConfig& config,
                          std::uint64_t seed) {
    auto objective = [&problem](std::span<const double> h) { return problem.cost(h); };
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    if (algo == Algo::coa) {
        COAConfig c = config.coa;
        c.seed = seed;
        rec.result = run(objective, problem.space(), c);
    } else {
        GAConfig g = config.ga;
        g.seed = seed;
        rec.result = run_ga(objective, problem.space(), g);
    }
    const auto stop = std::chrono::steady_clock::now();

    const auto assessed = problem.assess(rec.result.best_habitat);
    rec.report.algo = algo;
    rec.report.seed = seed;
    rec.report.instance_hash = problem.instance_hash();
    rec.report.best_cost = rec.result.best_cost;
    rec.report.raw_objective_of_best = assessed.raw_objective;
    rec.report.feasible = assessed.feasible;
    rec.report.iterations_used = rec.result.iterations_used;
    rec.report.terminated_by = rec.result.terminated_by;
    rec.report.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return rec;
}

/// Runs task(i) for i in [0, n) on up to `threads` workers. Results must be
/// written by index; the first exception is rethrown after all workers stop.
template <class Task>
void parallel_for(std::size_t n, unsigned threads, Task&& task) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

inline const std::vector<std::string>& run_report_header() {
    static const std::vector<std::string> h{"algo",     "seed",           "instance_hash",
                                            "best_cost", "raw_objective_of_best", "feasible",
                                            "iterations_used", "terminated_by"};
    return h;
}

inline void add_run_report_row(io::CsvWriter& csv, const RunReport& r) {
    csv.add(std::string(to_string(r.algo)), r.seed, r.instance_hash, r.best_cost,
            r.raw_objective_of_best, r.feasible, r.iterations_used,
            std::string(coa::to_string(r.terminated_by)));
}

inline std::string trace_csv(const RunResult& result) {
    io::CsvWriter csv({"iteration", "best_cost_so_far", "population_mean_cost", "population_spread"});
    for (const auto& tp : result.trace)
        csv.add(tp.iteration, tp.best_cost_so_far, tp.population_mean_cost, tp.population_spread);
    return csv.str();
}

// ---------------------------------------------------------------------------
// Shared option handling
// ---------------------------------------------------------------------------

/// Problem selection shared by solve, compare and sweep.
struct ProblemOptions {
    std::string objective = "lot_sizing";
    std::size_t dim = 2;
    std::optional<fs::path> instance;
};

inline Problem load_problem(const ProblemOptions& opt, const io::RunConfig& config) {
    if (opt.objective == "lot_sizing") {
        if (!opt.instance)
            throw ConfigError("--instance is required for --objective lot_sizing");
        return Problem::lot_sizing(io::read_instance(*opt.instance), config.penalty_weight);
    }
    return Problem::builtin(opt.objective, opt.dim);
}

inline io::RunConfig load_config(const std::optional<fs::path>& path) {
    return path ? io::read_run_config(*path) : io::RunConfig{};
}

inline ordered_json timing_json(const char* command, double wall_time_ms) {
    ordered_json j;
    j["schema_version"] = io::kSchemaVersion;
    j["command"] = command;
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveOptions {
    std::optional<fs::path> config;
    ProblemOptions problem;
    Algo algo = Algo::coa;
    std::optional<std::uint64_t> seed;
    fs::path out_dir;
};

/// One run. Writes report.csv, trace.csv, best.csv and timing.json.
inline RunRecord cmd_solve(const SolveOptions& opt, std::ostream& log) {
    const io::RunConfig config = load_config(opt.config);
    const Problem problem = load_problem(opt.problem, config);
    const std::uint64_t seed = opt.seed.value_or(config.base_seed);
    RunRecord rec = run_once(opt.algo, problem, config, seed);

    io::CsvWriter report(run_report_header());
    add_run_report_row(report, rec.report);
    io::write_text(opt.out_dir / "report.csv", report.str());
    io::write_text(opt.out_dir / "trace.csv", trace_csv(rec.result));
    io::CsvWriter best({"gene", "value"});
    for (std::size_t j = 0; j < rec.result.best_habitat.size(); ++j) best.add(j, rec.result.best_habitat[j]);
    io::write_text(opt.out_dir / "best.csv", best.str());
    io::write_text(opt.out_dir / "timing.json", timing_json("solve", rec.report.wall_time_ms).dump(2) + "\n");

    log << to_string(opt.algo) << " on " << problem.name() << " (seed " << seed << "): best cost "
        << io::format_double(rec.report.best_cost) << ", raw objective "
        << io::format_double(rec.report.raw_objective_of_best)
        << (rec.report.feasible ? ", feasible" : ", INFEASIBLE") << ", " << rec.report.iterations_used
        << " iterations (" << coa::to_string(rec.report.terminated_by) << ")\n";
    return rec;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOptions {
    std::optional<fs::path> config;
    ProblemOptions problem;
    int runs = 20;
    std::optional<std::uint64_t> seed;
    unsigned parallel = 1;
    fs::path out_dir;
};

struct CompareOutput {
    std::vector<RunRecord> coa_runs;
    std::vector<RunRecord> ga_runs;
    AggregateReport coa;
    AggregateReport ga;
};

inline ordered_json aggregate_json(const AggregateReport& a, const std::vector<RunRecord>& runs) {
    ordered_json j;
    j["algo"] = to_string(a.algo);
    j["runs"] = a.runs;
    j["average"] = a.mean_best_cost;
    j["deviation"] = a.std_best_cost;
    j["best"] = a.min_best_cost;
    j["mean_wall_time_ms"] = a.mean_wall_time_ms;
    j["mean_time_s"] = a.mean_wall_time_ms / 1000.0;
    int feasible = 0;
    ordered_json per_run = ordered_json::array();
    for (const auto& r : runs) {
        feasible += r.report.feasible ? 1 : 0;
        ordered_json e;
        e["seed"] = r.report.seed;
        e["best_cost"] = r.report.best_cost;
        e["wall_time_ms"] = r.report.wall_time_ms;
        per_run.push_back(std::move(e));
    }
    j["feasible_runs"] = feasible;
    j["per_run"] = std::move(per_run);
    return j;
}

/// `runs` seeded runs of COA and GA (seed = base + index) on the same fitness.
/// Writes runs.csv, aggregate.csv, traces.csv and summary.json.
inline CompareOutput cmd_compare(const CompareOptions& opt, std::ostream& log) {
    if (opt.runs < 1) throw ConfigError("--runs must be >= 1");
    const io::RunConfig config = load_config(opt.config);
    const Problem problem = load_problem(opt.problem, config);
    const std::uint64_t base = opt.seed.value_or(config.base_seed);
    const auto n = static_cast<std::size_t>(opt.runs);

    CompareOutput out;
    out.coa_runs.resize(n);
    out.ga_runs.resize(n);
    parallel_for(2 * n, opt.parallel, [&](std::size_t task) {
        const std::size_t i = task % n;
        const Algo algo = task < n ? Algo::coa : Algo::ga;
        auto& slot = algo == Algo::coa ? out.coa_runs[i] : out.ga_runs[i];
        slot = run_once(algo, problem, config, base + i);
    });

    auto reports = [](const std::vector<RunRecord>& recs) {
        std::vector<RunReport> r;
        for (const auto& x : recs) r.push_back(x.report);
        return r;
    };
    out.coa = aggregate(Algo::coa, reports(out.coa_runs));
    out.ga = aggregate(Algo::ga, reports(out.ga_runs));

    io::CsvWriter runs_csv(run_report_header());
    io::CsvWriter traces({"algo", "seed", "iteration", "best_cost_so_far", "population_mean_cost",
                          "population_spread"});
    for (const auto* group : {&out.coa_runs, &out.ga_runs}) {
        for (const auto& rec : *group) {
            add_run_report_row(runs_csv, rec.report);
            for (const auto& tp : rec.result.trace)
                traces.add(std::string(to_string(rec.report.algo)), rec.report.seed, tp.iteration,
                           tp.best_cost_so_far, tp.population_mean_cost, tp.population_spread);
        }
    }
    io::CsvWriter agg({"algo", "runs", "mean_best_cost", "std_best_cost", "min_best_cost"});
    for (const auto* a : {&out.coa, &out.ga})
        agg.add(std::string(to_string(a->algo)), a->runs, a->mean_best_cost, a->std_best_cost,
                a->min_best_cost);
    io::write_text(opt.out_dir / "runs.csv", runs_csv.str());
    io::write_text(opt.out_dir / "traces.csv", traces.str());
    io::write_text(opt.out_dir / "aggregate.csv", agg.str());

    ordered_json summary;
    summary["schema_version"] = io::kSchemaVersion;
    summary["kind"] = "compare_summary";
    summary["objective"] = problem.name();
    summary["instance_hash"] = problem.instance_hash();
    summary["penalty_weight"] = problem.penalty_weight();
    summary["base_seed"] = base;
    summary["algorithms"] = {aggregate_json(out.coa, out.coa_runs), aggregate_json(out.ga, out.ga_runs)};
    io::write_text(opt.out_dir / "summary.json", summary.dump(2) + "\n");

    log << std::left << std::setw(6) << "algo" << std::setw(16) << "average" << std::setw(16)
        << "deviation" << std::setw(16) << "best" << "time" << '\n';
    for (const auto* a : {&out.coa, &out.ga}) {
        std::ostringstream t;
        t << std::fixed << std::setprecision(3) << a->mean_wall_time_ms / 1000.0 << " s";
        std::ostringstream av, dv, bs;
        av << std::scientific << std::setprecision(4) << a->mean_best_cost;
        dv << std::scientific << std::setprecision(4) << a->std_best_cost;
        bs << std::scientific << std::setprecision(4) << a->min_best_cost;
        log << std::setw(6) << to_string(a->algo) << std::setw(16) << av.str() << std::setw(16) << dv.str()
            << std::setw(16) << bs.str() << t.str() << '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepVariant {
    std::string label;
    json overrides = json::object();
};

struct SweepSpec {
    int runs = 1;
    std::optional<std::uint64_t> base_seed;
    std::vector<SweepVariant> variants;
};

inline SweepSpec read_sweep_spec(const fs::path& path) {
    const std::string where = path.string();
    const json j = io::parse_json_file(path);
    io::detail::check_schema(j, where);
    io::detail::reject_unknown(j, {"schema_version", "kind", "runs", "base_seed", "variants"}, where);
    SweepSpec spec;
    io::detail::get_opt(j, "runs", spec.runs, where);
    if (spec.runs < 1) throw ParseError(where + ": runs must be >= 1");
    if (j.contains("base_seed")) spec.base_seed = io::detail::get<std::uint64_t>(j, "base_seed", where);
    if (j.contains("variants")) {
        if (!j.at("variants").is_array()) throw ParseError(where + ": 'variants' must be an array");
        std::size_t idx = 0;
        for (const auto& v : j.at("variants")) {
            const std::string vw = where + ": variants[" + std::to_string(idx) + "]";
            if (!v.is_object()) throw ParseError(vw + ": expected a JSON object");
            io::detail::reject_unknown(v, {"label", "overrides"}, vw);
            SweepVariant var;
            var.label = v.contains("label") ? io::detail::get<std::string>(v, "label", vw)
                                            : "variant" + std::to_string(idx);
            if (v.contains("overrides")) var.overrides = v.at("overrides");
            // Validate the override keys up front so nothing runs on a bad spec.
            COAConfig probe;
            io::apply_coa_overrides(probe, var.overrides, vw + ": overrides");
            spec.variants.push_back(std::move(var));
            ++idx;
        }
    }
    return spec;
}

struct SweepOptions {
    fs::path spec;
    std::optional<fs::path> config;
    ProblemOptions problem;
    std::optional<std::uint64_t> seed;
    unsigned parallel = 1;
    fs::path out_dir;
};

struct SweepRow {
    std::string label;
    COAConfig config;
    int runs = 0;
    double mean_best_cost = 0.0;
    double min_best_cost = 0.0;
    double total_time_ms = 0.0;
    std::vector<RunRecord> records;
};

/// COA parameter sweep: one row per variant with mean cost and total time.
/// Writes sweep.csv and sweep_summary.json.
inline std::vector<SweepRow> cmd_sweep(const SweepOptions& opt, std::ostream& log) {
    const SweepSpec spec = read_sweep_spec(opt.spec);
    const io::RunConfig config = load_config(opt.config);
    const std::uint64_t base = opt.seed ? *opt.seed : spec.base_seed.value_or(config.base_seed);

    std::vector<SweepRow> rows(spec.variants.size());
    for (std::size_t v = 0; v < rows.size(); ++v) {
        rows[v].label = spec.variants[v].label;
        rows[v].config = config.coa;
        io::apply_coa_overrides(rows[v].config, spec.variants[v].overrides,
                                opt.spec.string() + ": " + rows[v].label);
        try {
            rows[v].config.validate();
        } catch (const ConfigError& e) {
            throw ConfigError(opt.spec.string() + ": " + rows[v].label + ": " + e.what());
        }
        rows[v].runs = spec.runs;
        rows[v].records.resize(static_cast<std::size_t>(spec.runs));
    }

    if (!rows.empty()) {
        const Problem problem = load_problem(opt.problem, config);
        const auto runs = static_cast<std::size_t>(spec.runs);
        parallel_for(rows.size() * runs, opt.parallel, [&](std::size_t task) {
            auto& row = rows[task / runs];
            io::RunConfig rc = config;
            rc.coa = row.config;
            row.records[task % runs] = run_once(Algo::coa, problem, rc, base + task % runs);
        });
    }

    io::CsvWriter csv({"variant", "label", "max_living", "n_initial", "k_clusters", "runs",
                       "mean_best_cost", "min_best_cost"});
    ordered_json table = ordered_json::array();
    for (std::size_t v = 0; v < rows.size(); ++v) {
        auto& row = rows[v];
        std::vector<RunReport> reps;
        for (const auto& r : row.records) {
            reps.push_back(r.report);
            row.total_time_ms += r.report.wall_time_ms;
        }
        const auto agg = aggregate(Algo::coa, reps);
        row.mean_best_cost = agg.mean_best_cost;
        row.min_best_cost = agg.min_best_cost;
        csv.add(v, row.label, row.config.max_living, row.config.n_initial, row.config.k_clusters, row.runs,
                row.mean_best_cost, row.min_best_cost);
        ordered_json e;
        e["label"] = row.label;
        e["total_time_s"] = row.total_time_ms / 1000.0;
        e["cost"] = row.mean_best_cost;
        e["max_living"] = row.config.max_living;
        e["n_initial"] = row.config.n_initial;
        e["k_clusters"] = row.config.k_clusters;
        e["runs"] = row.runs;
        table.push_back(std::move(e));
    }
    io::write_text(opt.out_dir / "sweep.csv", csv.str());
    ordered_json summary;
    summary["schema_version"] = io::kSchemaVersion;
    summary["kind"] = "sweep_summary";
    summary["base_seed"] = base;
    summary["rows"] = std::move(table);
    io::write_text(opt.out_dir / "sweep_summary.json", summary.dump(2) + "\n");

    log << std::left << std::setw(14) << "total time" << std::setw(16) << "cost" << std::setw(12)
        << "max living" << std::setw(10) << "initial" << "clusters\n";
    for (const auto& row : rows) {
        std::ostringstream t, c;
        t << std::fixed << std::setprecision(3) << row.total_time_ms / 1000.0 << " s";
        c << std::scientific << std::setprecision(4) << row.mean_best_cost;
        log << std::setw(14) << t.str() << std::setw(16) << c.str() << std::setw(12) << row.config.max_living
            << std::setw(10) << row.config.n_initial << row.config.k_clusters << '\n';
    }
    return rows;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

struct OracleOptions {
    fs::path instance;
    double grid_step = 1.0;
    double x_max = 10.0;
    fs::path out_dir;
};

/// Exact grid enumeration. Writes oracle.json; when out_dir already holds a
/// COA report.csv for the same instance, a cross-check entry is added.
inline lot::OracleResult cmd_oracle(const OracleOptions& opt, std::ostream& log) {
    const lot::Instance inst = io::read_instance(opt.instance);
    const auto res = lot::solve_exact(inst, opt.grid_step, opt.x_max);
    const std::string hash = io::instance_hash(inst);

    ordered_json j;
    j["schema_version"] = io::kSchemaVersion;
    j["kind"] = "oracle_result";
    j["instance_hash"] = hash;
    j["grid_step"] = opt.grid_step;
    j["x_max"] = opt.x_max;
    j["plans_enumerated"] = res.plans_enumerated;
    j["feasible"] = res.feasible;
    j["best_cost"] = res.best_cost;
    j["total_violation"] = res.total_violation;
    j["best_plan"] = io::detail::table_to_json(res.best_plan);

    log << "oracle: " << res.plans_enumerated << " plans, best cost " << io::format_double(res.best_cost)
        << (res.feasible ? "" : " (no feasible grid plan; least-violation plan reported)") << '\n';

    const fs::path report = opt.out_dir / "report.csv";
    if (fs::exists(report)) {
        const auto csv = io::read_csv(report);
        for (const auto& row : csv.rows) {
            if (row[csv.column("algo")] != "coa" || row[csv.column("instance_hash")] != hash) continue;
            const double coa_raw = io::parse_double(row[csv.column("raw_objective_of_best")]);
            const bool coa_feasible = row[csv.column("feasible")] == "true";
            ordered_json cc;
            cc["report"] = "report.csv";
            cc["coa_seed"] = std::stoull(row[csv.column("seed")]);
            cc["coa_raw_objective"] = coa_raw;
            cc["coa_feasible"] = coa_feasible;
            cc["gap"] = coa_raw - res.best_cost;
            cc["relative_gap"] = res.best_cost != 0.0 ? (coa_raw - res.best_cost) / std::abs(res.best_cost) : 0.0;
            log << "cross-check: coa " << io::format_double(coa_raw) << " vs oracle "
                << io::format_double(res.best_cost) << " (gap " << io::format_double(coa_raw - res.best_cost)
                << ")\n";
            j["cross_check"] = std::move(cc);
            break;
        }
    }
    io::write_text(opt.out_dir / "oracle.json", j.dump(2) + "\n");
    return res;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
    std::uint64_t seed = 1;
    std::size_t n_products = 3;
    std::size_t n_periods = 5;
    std::size_t n_resources = 2;
    lot::GenerationRanges ranges;
    fs::path out;
};

/// Sets one named range from "lo:hi" text.
inline void set_range(lot::GenerationRanges& r, const std::string& name, const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("range '" + name + "': expected lo:hi, got '" + spec + "'");
    lot::Range v;
    try {
        v.min = io::parse_double(spec.substr(0, colon));
        v.max = io::parse_double(spec.substr(colon + 1));
    } catch (const ParseError&) {
        throw ConfigError("range '" + name + "': expected lo:hi, got '" + spec + "'");
    }
    if (v.min > v.max) throw ConfigError("range '" + name + "': min must be <= max");
    lot::Range* slot = nullptr;
    if (name == "price") slot = &r.price;
    else if (name == "unit_cost") slot = &r.unit_cost;
    else if (name == "holding_cost") slot = &r.holding_cost;
    else if (name == "setup_cost") slot = &r.setup_cost;
    else if (name == "shortage_cost") slot = &r.shortage_cost;
    else if (name == "demand") slot = &r.demand;
    else if (name == "resource_use") slot = &r.resource_use;
    else if (name == "storage_use") slot = &r.storage_use;
    else if (name == "carry_fraction") slot = &r.carry_fraction;
    else if (name == "capacity_slack") slot = &r.capacity_slack;
    else throw ConfigError("unknown range '" + name + "'");
    *slot = v;
}

inline lot::Instance cmd_gen(const GenOptions& opt, std::ostream& log) {
    const lot::Instance inst =
        lot::generate_instance(opt.seed, opt.n_products, opt.n_periods, opt.n_resources, opt.ranges);
    io::write_instance(opt.out, inst);
    log << "wrote " << opt.out.string() << " (N=" << inst.n_products << ", T=" << inst.n_periods
        << ", M=" << inst.n_resources << ", hash " << io::instance_hash(inst) << ")\n";
    return inst;
}

} // namespace coa::bench
