#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "coa/coa.hpp"
#include "coa/errors.hpp"
#include "coa/exact_oracle.hpp"
#include "coa/ga.hpp"
#include "coa/lot_sizing.hpp"

namespace coa::io {

using nlohmann::json;
using nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

inline json parse_json_file(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based; turn it into a line number for the message.
        std::size_t line = 1;
        for (std::size_t b = 0; b + 1 < e.byte && b < text.size(); ++b)
            if (text[b] == '\n') ++line;
        throw ParseError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Field readers with path-qualified errors
// ---------------------------------------------------------------------------

namespace detail {

inline void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + ": field '" + key + "': " + e.what());
    }
}

template <class T>
void get_opt(const json& obj, const std::string& key, T& out, const std::string& where) {
    if (obj.contains(key)) out = get<T>(obj, key, where);
}

inline void check_schema(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected a JSON object");
    const int v = get<int>(obj, "schema_version", where);
    if (v != kSchemaVersion)
        throw ParseError(where + ": unsupported schema_version " + std::to_string(v));
}

inline json table_to_json(const lot::Table& t) {
    json rows = json::array();
    for (std::size_t r = 0; r < t.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < t.cols(); ++c) row.push_back(t(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline lot::Table table_from_json(const json& obj, const std::string& key, std::size_t rows,
                                  std::size_t cols, const std::string& where) {
    const auto nested = get<std::vector<std::vector<double>>>(obj, key, where);
    if (nested.size() != rows)
        throw ParseError(where + ": field '" + key + "' has " + std::to_string(nested.size()) +
                         " rows, expected " + std::to_string(rows));
    lot::Table t(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (nested[r].size() != cols)
            throw ParseError(where + ": field '" + key + "' row " + std::to_string(r) + " has " +
                             std::to_string(nested[r].size()) + " columns, expected " +
                             std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) t(r, c) = nested[r][c];
    }
    return t;
}

inline std::vector<double> vector_from_json(const json& obj, const std::string& key, std::size_t n,
                                            const std::string& where) {
    auto v = get<std::vector<double>>(obj, key, where);
    if (v.size() != n)
        throw ParseError(where + ": field '" + key + "' has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(n));
    return v;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

inline ordered_json instance_to_json(const lot::Instance& in) {
    using detail::table_to_json;
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "lot_sizing_instance";
    j["n_products"] = in.n_products;
    j["n_periods"] = in.n_periods;
    j["n_resources"] = in.n_resources;
    j["price"] = table_to_json(in.price);
    j["unit_cost"] = table_to_json(in.unit_cost);
    j["holding_cost"] = table_to_json(in.holding_cost);
    j["setup_cost"] = table_to_json(in.setup_cost);
    j["shortage_cost"] = table_to_json(in.shortage_cost);
    j["demand"] = table_to_json(in.demand);
    j["resource_use"] = table_to_json(in.resource_use);
    j["resource_cap"] = table_to_json(in.resource_cap);
    j["storage_use"] = in.storage_use;
    j["storage_cap"] = in.storage_cap;
    j["carry_fraction"] = table_to_json(in.carry_fraction);
    j["big_m"] = in.big_m;
    j["x_upper"] = table_to_json(in.x_upper);
    return j;
}

inline lot::Instance instance_from_json(const json& j, const std::string& where) {
    using detail::get;
    using detail::table_from_json;
    detail::check_schema(j, where);
    detail::reject_unknown(j,
                           {"schema_version", "kind", "n_products", "n_periods", "n_resources", "price",
                            "unit_cost", "holding_cost", "setup_cost", "shortage_cost", "demand",
                            "resource_use", "resource_cap", "storage_use", "storage_cap",
                            "carry_fraction", "big_m", "x_upper"},
                           where);
    if (get<std::string>(j, "kind", where) != "lot_sizing_instance")
        throw ParseError(where + ": field 'kind' must be \"lot_sizing_instance\"");
    lot::Instance in;
    in.n_products = get<std::size_t>(j, "n_products", where);
    in.n_periods = get<std::size_t>(j, "n_periods", where);
    in.n_resources = get<std::size_t>(j, "n_resources", where);
    const std::size_t N = in.n_products, T = in.n_periods, M = in.n_resources;
    in.price = table_from_json(j, "price", N, T, where);
    in.unit_cost = table_from_json(j, "unit_cost", N, T, where);
    in.holding_cost = table_from_json(j, "holding_cost", N, T, where);
    in.setup_cost = table_from_json(j, "setup_cost", N, T, where);
    in.shortage_cost = table_from_json(j, "shortage_cost", N, T, where);
    in.demand = table_from_json(j, "demand", N, T, where);
    in.resource_use = table_from_json(j, "resource_use", N, M, where);
    in.resource_cap = table_from_json(j, "resource_cap", M, T, where);
    in.storage_use = detail::vector_from_json(j, "storage_use", N, where);
    in.storage_cap = detail::vector_from_json(j, "storage_cap", T, where);
    in.carry_fraction = table_from_json(j, "carry_fraction", N, T, where);
    in.big_m = get<double>(j, "big_m", where);
    in.x_upper = table_from_json(j, "x_upper", N, T, where);
    return in;
}

inline std::string instance_text(const lot::Instance& in) { return instance_to_json(in).dump(2) + "\n"; }

/// Identifies an instance by content, independent of file formatting.
inline std::string instance_hash(const lot::Instance& in) { return fnv1a_hex(instance_to_json(in).dump()); }

inline void write_instance(const std::filesystem::path& path, const lot::Instance& in) {
    write_text(path, instance_text(in));
}

/// Reads and validates an instance file; any defect is a ParseError.
inline lot::Instance read_instance(const std::filesystem::path& path) {
    const lot::Instance in = instance_from_json(parse_json_file(path), path.string());
    const auto defects = lot::validate_instance(in);
    if (!defects.empty()) {
        std::string msg = path.string() + ": invalid instance:";
        for (const auto& d : defects) msg += "\n  " + d;
        throw ParseError(msg);
    }
    return in;
}

// ---------------------------------------------------------------------------
// Optimizer configs
// ---------------------------------------------------------------------------

inline const std::set<std::string>& coa_config_fields() {
    static const std::set<std::string> f{"n_initial", "min_eggs", "max_eggs", "max_iterations",
                                         "k_clusters", "max_living", "alpha", "cull_fraction",
                                         "lambda_max", "phi_bound", "convergence_ratio",
                                         "convergence_eps", "kmeans_max_iter", "seed"};
    return f;
}

/// Overlays the fields present in `j` onto `cfg`; unknown fields are errors.
inline void apply_coa_overrides(COAConfig& cfg, const json& j, const std::string& where) {
    using detail::get_opt;
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    detail::reject_unknown(j, coa_config_fields(), where);
    get_opt(j, "n_initial", cfg.n_initial, where);
    get_opt(j, "min_eggs", cfg.min_eggs, where);
    get_opt(j, "max_eggs", cfg.max_eggs, where);
    get_opt(j, "max_iterations", cfg.max_iterations, where);
    get_opt(j, "k_clusters", cfg.k_clusters, where);
    get_opt(j, "max_living", cfg.max_living, where);
    get_opt(j, "alpha", cfg.alpha, where);
    get_opt(j, "cull_fraction", cfg.cull_fraction, where);
    get_opt(j, "lambda_max", cfg.lambda_max, where);
    get_opt(j, "phi_bound", cfg.phi_bound, where);
    get_opt(j, "convergence_ratio", cfg.convergence_ratio, where);
    get_opt(j, "convergence_eps", cfg.convergence_eps, where);
    get_opt(j, "kmeans_max_iter", cfg.kmeans_max_iter, where);
    get_opt(j, "seed", cfg.seed, where);
}

inline ordered_json coa_config_to_json(const COAConfig& c) {
    ordered_json j;
    j["n_initial"] = c.n_initial;
    j["min_eggs"] = c.min_eggs;
    j["max_eggs"] = c.max_eggs;
    j["max_iterations"] = c.max_iterations;
    j["k_clusters"] = c.k_clusters;
    j["max_living"] = c.max_living;
    j["alpha"] = c.alpha;
    j["cull_fraction"] = c.cull_fraction;
    j["lambda_max"] = c.lambda_max;
    j["phi_bound"] = c.phi_bound;
    j["convergence_ratio"] = c.convergence_ratio;
    j["convergence_eps"] = c.convergence_eps;
    j["kmeans_max_iter"] = c.kmeans_max_iter;
    j["seed"] = c.seed;
    return j;
}

inline void apply_ga_overrides(GAConfig& cfg, const json& j, const std::string& where) {
    using detail::get_opt;
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    detail::reject_unknown(j,
                           {"pop_size", "generations", "tournament_size", "crossover_rate", "blend_alpha",
                            "mutation_rate", "mutation_sigma_fraction", "elite_count", "seed"},
                           where);
    get_opt(j, "pop_size", cfg.pop_size, where);
    get_opt(j, "generations", cfg.generations, where);
    get_opt(j, "tournament_size", cfg.tournament_size, where);
    get_opt(j, "crossover_rate", cfg.crossover_rate, where);
    get_opt(j, "blend_alpha", cfg.blend_alpha, where);
    get_opt(j, "mutation_rate", cfg.mutation_rate, where);
    get_opt(j, "mutation_sigma_fraction", cfg.mutation_sigma_fraction, where);
    get_opt(j, "elite_count", cfg.elite_count, where);
    get_opt(j, "seed", cfg.seed, where);
}

inline ordered_json ga_config_to_json(const GAConfig& c) {
    ordered_json j;
    j["pop_size"] = c.pop_size;
    j["generations"] = c.generations;
    j["tournament_size"] = c.tournament_size;
    j["crossover_rate"] = c.crossover_rate;
    j["blend_alpha"] = c.blend_alpha;
    j["mutation_rate"] = c.mutation_rate;
    j["mutation_sigma_fraction"] = c.mutation_sigma_fraction;
    j["elite_count"] = c.elite_count;
    j["seed"] = c.seed;
    return j;
}

/// Contents of a run-config file: both optimizers plus the shared fitness settings.
struct RunConfig {
    COAConfig coa;
    GAConfig ga;
    double penalty_weight = lot::kDefaultPenaltyWeight;
    std::uint64_t base_seed = 1;
};

inline RunConfig run_config_from_json(const json& j, const std::string& where) {
    detail::check_schema(j, where);
    detail::reject_unknown(j, {"schema_version", "kind", "base_seed", "penalty_weight", "coa", "ga"}, where);
    if (j.contains("kind") && detail::get<std::string>(j, "kind", where) != "run_config")
        throw ParseError(where + ": field 'kind' must be \"run_config\"");
    RunConfig rc;
    detail::get_opt(j, "base_seed", rc.base_seed, where);
    detail::get_opt(j, "penalty_weight", rc.penalty_weight, where);
    if (j.contains("coa")) apply_coa_overrides(rc.coa, j.at("coa"), where + ": coa");
    if (j.contains("ga")) apply_ga_overrides(rc.ga, j.at("ga"), where + ": ga");
    try {
        rc.coa.validate();
        rc.ga.validate();
    } catch (const ConfigError& e) {
        throw ParseError(where + ": " + e.what());
    }
    if (!(rc.penalty_weight > 0.0)) throw ParseError(where + ": penalty_weight must be > 0");
    return rc;
}

inline ordered_json run_config_to_json(const RunConfig& rc) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "run_config";
    j["base_seed"] = rc.base_seed;
    j["penalty_weight"] = rc.penalty_weight;
    j["coa"] = coa_config_to_json(rc.coa);
    j["ga"] = ga_config_to_json(rc.ga);
    return j;
}

inline RunConfig read_run_config(const std::filesystem::path& path) {
    return run_config_from_json(parse_json_file(path), path.string());
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Comma-separated table with a schema comment line and a header row.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) {
        out_ << "# schema_version=" << kSchemaVersion << '\n';
        row(header);
    }

    template <class... Cells>
    void add(const Cells&... cells) {
        std::vector<std::string> r;
        (r.push_back(cell(cells)), ...);
        row(r);
    }

    std::string str() const { return out_.str(); }

private:
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(bool b) { return b ? "true" : "false"; }
    template <class I, class = std::enable_if_t<std::is_integral_v<I>>>
    static std::string cell(I v) { return std::to_string(v); }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

    std::ostringstream out_;
};

/// A parsed CSV file: header names plus rows of raw cells. Lines starting
/// with '#' are ignored.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw ParseError("csv: no column '" + name + "'");
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

inline CsvTable read_csv(const std::filesystem::path& path) {
    std::istringstream in(read_text(path));
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
        } else {
            if (cells.size() != t.header.size())
                throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                                 std::to_string(t.header.size()) + " cells, got " +
                                 std::to_string(cells.size()));
            t.rows.push_back(std::move(cells));
        }
    }
    if (!have_header) throw ParseError(path.string() + ": missing header row");
    return t;
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError("not a number: '" + s + "'");
    return v;
}

} // namespace coa::io
