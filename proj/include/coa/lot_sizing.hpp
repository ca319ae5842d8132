#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coa/errors.hpp"
#include "coa/rng.hpp"
#include "coa/search_space.hpp"

namespace coa::lot {

/// Dense row-major table of reals, e.g. product x period.
class Table {
public:
    Table() = default;
    Table(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const double> flat() const { return data_; }
    std::span<double> flat() { return data_; }

    bool operator==(const Table&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Multi-product, multi-period capacitated lot-sizing instance. Tables indexed
/// [product][period] unless noted.
struct Instance {
    std::size_t n_products = 0;
    std::size_t n_periods = 0;
    std::size_t n_resources = 0;
    Table price;
    Table unit_cost;
    Table holding_cost;
    Table setup_cost;
    Table shortage_cost;
    Table demand;
    Table resource_use;          // [product][resource]
    Table resource_cap;          // [resource][period]
    std::vector<double> storage_use;  // per product
    std::vector<double> storage_cap;  // per period
    Table carry_fraction;        // share of last period's backorder that stays on the books
    double big_m = 0.0;
    Table x_upper;               // production bound used when decoding habitats

    bool operator==(const Instance&) const = default;
};

/// Production quantity below which a period counts as "no setup".
inline constexpr double kSetupThreshold = 1e-6;

struct Schedule {
    Table production;  // x
    Table sales;       // s
    Table inventory;   // I
    Table backorder;   // B
    Table setup;       // Z, 0 or 1
};

struct Violations {
    std::vector<double> storage;  // per period
    Table resource;               // [resource][period]
    Table setup;                  // [product][period]

    double sum_of_squares() const {
        double s = 0.0;
        for (double v : storage) s += v * v;
        for (double v : resource.flat()) s += v * v;
        for (double v : setup.flat()) s += v * v;
        return s;
    }
    double total() const {
        double s = 0.0;
        for (double v : storage) s += v;
        for (double v : resource.flat()) s += v;
        for (double v : setup.flat()) s += v;
        return s;
    }
    bool none() const { return total() == 0.0; }
};

struct Evaluation {
    double raw_objective = 0.0;
    Violations violations;
    double penalized_cost = 0.0;
    bool feasible = true;
};

inline constexpr double kDefaultPenaltyWeight = 1e6;

/// Habitat -> production plan: clamp each gene to [0, x_upper] and snap
/// values under the setup threshold to zero. Genes are laid out product-major.
inline Table decode(std::span<const double> habitat, const Instance& inst) {
    const std::size_t n = inst.n_products * inst.n_periods;
    if (habitat.size() != n)
        throw DomainError("decode: habitat length " + std::to_string(habitat.size()) +
                          " != n_products * n_periods = " + std::to_string(n));
    Table x(inst.n_products, inst.n_periods);
    for (std::size_t i = 0; i < inst.n_products; ++i) {
        for (std::size_t t = 0; t < inst.n_periods; ++t) {
            double v = std::clamp(habitat[i * inst.n_periods + t], 0.0, inst.x_upper(i, t));
            if (v < kSetupThreshold) v = 0.0;
            x(i, t) = v;
        }
    }
    return x;
}

/// Forward simulation of sales, inventory and backorders from a production
/// plan, starting from empty stock and no backlog.
///
/// Per period the carried backlog r*B(t-1) joins demand, sales take as much of
/// that as stock on hand allows, and the rest is backordered. This satisfies
/// x + B + I(t-1) - I - D - r*B(t-1) = 0 and s = D - B + r*B(t-1) exactly.
inline Schedule derive_schedule(const Table& x, const Instance& inst) {
    const std::size_t N = inst.n_products, T = inst.n_periods;
    Schedule s{x, Table(N, T), Table(N, T), Table(N, T), Table(N, T)};
    for (std::size_t i = 0; i < N; ++i) {
        double inv_prev = 0.0, back_prev = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            const double due = inst.demand(i, t) + inst.carry_fraction(i, t) * back_prev;
            const double available = x(i, t) + inv_prev;
            const double sold = std::min(available, due);
            s.sales(i, t) = sold;
            s.backorder(i, t) = due - sold;
            s.inventory(i, t) = available - sold;
            s.setup(i, t) = x(i, t) > kSetupThreshold ? 1.0 : 0.0;
            inv_prev = s.inventory(i, t);
            back_prev = s.backorder(i, t);
        }
    }
    return s;
}

/// Cost to minimize: -revenue + production + holding (from the second period
/// on) + setups + shortage.
inline double objective(const Schedule& s, const Instance& inst) {
    double z = 0.0;
    for (std::size_t i = 0; i < inst.n_products; ++i) {
        for (std::size_t t = 0; t < inst.n_periods; ++t) {
            z -= inst.price(i, t) * s.sales(i, t);
            z += inst.unit_cost(i, t) * s.production(i, t);
            if (t >= 1) z += inst.holding_cost(i, t) * s.inventory(i, t);
            z += inst.setup_cost(i, t) * s.setup(i, t);
            z += inst.shortage_cost(i, t) * s.backorder(i, t);
        }
    }
    return z;
}

/// Warehouse, resource and setup-linking shortfalls; zero means satisfied.
inline Violations constraint_violations(const Schedule& s, const Instance& inst) {
    const std::size_t N = inst.n_products, T = inst.n_periods, M = inst.n_resources;
    Violations v{std::vector<double>(T, 0.0), Table(M, T), Table(N, T)};
    for (std::size_t t = 0; t < T; ++t) {
        double stored = 0.0;
        for (std::size_t i = 0; i < N; ++i) stored += inst.storage_use[i] * s.inventory(i, t);
        v.storage[t] = std::max(0.0, stored - inst.storage_cap[t]);
        for (std::size_t m = 0; m < M; ++m) {
            double used = 0.0;
            for (std::size_t i = 0; i < N; ++i) used += inst.resource_use(i, m) * s.production(i, t);
            v.resource(m, t) = std::max(0.0, used - inst.resource_cap(m, t));
        }
        for (std::size_t i = 0; i < N; ++i)
            v.setup(i, t) = std::max(0.0, s.production(i, t) - inst.big_m * s.setup(i, t));
    }
    return v;
}

/// Evaluates a production plan directly (no decoding).
inline Evaluation evaluate_plan(const Table& x, const Instance& inst,
                                double penalty_weight = kDefaultPenaltyWeight) {
    const Schedule s = derive_schedule(x, inst);
    Evaluation e;
    e.raw_objective = objective(s, inst);
    e.violations = constraint_violations(s, inst);
    e.feasible = e.violations.none();
    e.penalized_cost =
        e.feasible ? e.raw_objective : e.raw_objective + penalty_weight * e.violations.sum_of_squares();
    return e;
}

/// Cost handed to the optimizers: objective plus weight * sum of squared violations.
inline Evaluation penalized_fitness(std::span<const double> habitat, const Instance& inst,
                                    double penalty_weight = kDefaultPenaltyWeight) {
    if (!(penalty_weight > 0.0)) throw ConfigError("penalty_weight must be > 0");
    return evaluate_plan(decode(habitat, inst), inst, penalty_weight);
}

/// Search box for an instance: gene j ranges over [-margin * x_upper, x_upper].
/// The negative margin leaves a region that decodes to exactly zero production.
inline SearchSpace search_space(const Instance& inst, double margin = 0.1) {
    std::vector<double> lo, hi;
    for (std::size_t i = 0; i < inst.n_products; ++i) {
        for (std::size_t t = 0; t < inst.n_periods; ++t) {
            const double u = inst.x_upper(i, t);
            lo.push_back(-margin * u);
            hi.push_back(u);
        }
    }
    return SearchSpace(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------------------
// Instance generation and validation
// ---------------------------------------------------------------------------

struct Range {
    double min = 0.0;
    double max = 0.0;
};

/// Sampling ranges for generate_instance.
struct GenerationRanges {
    Range price{20.0, 40.0};
    Range unit_cost{5.0, 15.0};
    Range holding_cost{1.0, 3.0};
    Range setup_cost{50.0, 150.0};
    Range shortage_cost{2.0, 6.0};
    Range demand{20.0, 100.0};
    Range resource_use{1.0, 3.0};
    Range storage_use{1.0, 2.0};
    Range carry_fraction{1.0, 1.0};
    Range capacity_slack{1.2, 1.5};  // capacity / load of the produce-to-demand plan
    bool integral_demand = false;
};

namespace detail {
inline void check_range(const char* name, const Range& r) {
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max)
        throw ConfigError(std::string("range '") + name + "': min must be <= max");
    if (r.min < 0.0) throw ConfigError(std::string("range '") + name + "': min must be >= 0");
}
} // namespace detail

/// Random instance with every table drawn uniformly from `ranges`.
///
/// Resource and storage capacities are scaled from the produce-to-demand plan
/// by a factor drawn from `capacity_slack`, so that plan is always feasible.
/// The production bound per product is its total horizon demand (at least 1).
inline Instance generate_instance(std::uint64_t seed, std::size_t n_products, std::size_t n_periods,
                                  std::size_t n_resources, const GenerationRanges& ranges = {}) {
    if (n_products == 0 || n_periods == 0 || n_resources == 0)
        throw ConfigError("generate_instance: dimensions must be positive");
    detail::check_range("price", ranges.price);
    detail::check_range("unit_cost", ranges.unit_cost);
    detail::check_range("holding_cost", ranges.holding_cost);
    detail::check_range("setup_cost", ranges.setup_cost);
    detail::check_range("shortage_cost", ranges.shortage_cost);
    detail::check_range("demand", ranges.demand);
    detail::check_range("resource_use", ranges.resource_use);
    detail::check_range("storage_use", ranges.storage_use);
    detail::check_range("carry_fraction", ranges.carry_fraction);
    detail::check_range("capacity_slack", ranges.capacity_slack);
    if (ranges.carry_fraction.max > 1.0)
        throw ConfigError("range 'carry_fraction': max must be <= 1");
    if (ranges.capacity_slack.min < 1.2)
        throw ConfigError("range 'capacity_slack': min must be >= 1.2");

    const std::size_t N = n_products, T = n_periods, M = n_resources;
    Rng rng(seed);
    auto fill = [&](Table& tab, const Range& r) {
        for (double& v : tab.flat()) v = rng.uniform(r.min, r.max);
    };

    Instance in;
    in.n_products = N;
    in.n_periods = T;
    in.n_resources = M;
    in.price = Table(N, T);
    in.unit_cost = Table(N, T);
    in.holding_cost = Table(N, T);
    in.setup_cost = Table(N, T);
    in.shortage_cost = Table(N, T);
    in.demand = Table(N, T);
    in.carry_fraction = Table(N, T);
    in.resource_use = Table(N, M);
    fill(in.price, ranges.price);
    fill(in.unit_cost, ranges.unit_cost);
    fill(in.holding_cost, ranges.holding_cost);
    fill(in.setup_cost, ranges.setup_cost);
    fill(in.shortage_cost, ranges.shortage_cost);
    fill(in.demand, ranges.demand);
    if (ranges.integral_demand)
        for (double& v : in.demand.flat()) v = std::round(v);
    fill(in.carry_fraction, ranges.carry_fraction);
    fill(in.resource_use, ranges.resource_use);
    in.storage_use.resize(N);
    for (double& v : in.storage_use) v = rng.uniform(ranges.storage_use.min, ranges.storage_use.max);

    in.resource_cap = Table(M, T);
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t t = 0; t < T; ++t) {
            double load = 0.0;
            for (std::size_t i = 0; i < N; ++i) load += in.resource_use(i, m) * in.demand(i, t);
            in.resource_cap(m, t) = load * rng.uniform(ranges.capacity_slack.min, ranges.capacity_slack.max);
        }
    }
    in.storage_cap.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        double bulk = 0.0;
        for (std::size_t i = 0; i < N; ++i) bulk += in.storage_use[i] * in.demand(i, t);
        in.storage_cap[t] = bulk * rng.uniform(ranges.capacity_slack.min, ranges.capacity_slack.max);
    }

    in.x_upper = Table(N, T);
    double biggest = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double horizon = 0.0;
        for (std::size_t t = 0; t < T; ++t) horizon += in.demand(i, t);
        horizon = std::max(horizon, 1.0);
        for (std::size_t t = 0; t < T; ++t) in.x_upper(i, t) = horizon;
        biggest = std::max(biggest, horizon);
    }
    in.big_m = biggest;
    return in;
}

/// Every broken instance invariant, each prefixed with its field path.
/// An empty result means the instance is valid.
inline std::vector<std::string> validate_instance(const Instance& in) {
    std::vector<std::string> defects;
    const std::size_t N = in.n_products, T = in.n_periods, M = in.n_resources;
    if (N == 0) defects.push_back("n_products: must be positive");
    if (T == 0) defects.push_back("n_periods: must be positive");
    if (M == 0) defects.push_back("n_resources: must be positive");

    auto shape = [&](const char* name, const Table& tab, std::size_t r, std::size_t c) {
        if (tab.rows() != r || tab.cols() != c) {
            defects.push_back(std::string(name) + ": expected " + std::to_string(r) + "x" +
                              std::to_string(c) + ", got " + std::to_string(tab.rows()) + "x" +
                              std::to_string(tab.cols()));
            return false;
        }
        return true;
    };
    auto nonneg = [&](const char* name, const Table& tab, std::size_t r, std::size_t c) {
        if (!shape(name, tab, r, c)) return;
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < c; ++b)
                if (!(tab(a, b) >= 0.0) || !std::isfinite(tab(a, b)))
                    defects.push_back(std::string(name) + "[" + std::to_string(a) + "][" +
                                      std::to_string(b) + "]: must be finite and >= 0");
    };
    auto nonneg_vec = [&](const char* name, const std::vector<double>& v, std::size_t n) {
        if (v.size() != n) {
            defects.push_back(std::string(name) + ": expected length " + std::to_string(n) +
                              ", got " + std::to_string(v.size()));
            return;
        }
        for (std::size_t a = 0; a < n; ++a)
            if (!(v[a] >= 0.0) || !std::isfinite(v[a]))
                defects.push_back(std::string(name) + "[" + std::to_string(a) +
                                  "]: must be finite and >= 0");
    };

    nonneg("price", in.price, N, T);
    nonneg("unit_cost", in.unit_cost, N, T);
    nonneg("holding_cost", in.holding_cost, N, T);
    nonneg("setup_cost", in.setup_cost, N, T);
    nonneg("shortage_cost", in.shortage_cost, N, T);
    nonneg("demand", in.demand, N, T);
    nonneg("resource_use", in.resource_use, N, M);
    nonneg("resource_cap", in.resource_cap, M, T);
    nonneg_vec("storage_use", in.storage_use, N);
    nonneg_vec("storage_cap", in.storage_cap, T);
    if (shape("carry_fraction", in.carry_fraction, N, T)) {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t t = 0; t < T; ++t)
                if (!(in.carry_fraction(i, t) >= 0.0 && in.carry_fraction(i, t) <= 1.0))
                    defects.push_back("carry_fraction[" + std::to_string(i) + "][" +
                                      std::to_string(t) + "]: must be in [0,1]");
    }
    if (shape("x_upper", in.x_upper, N, T)) {
        double biggest = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t t = 0; t < T; ++t) {
                const double u = in.x_upper(i, t);
                if (!(u > 0.0) || !std::isfinite(u))
                    defects.push_back("x_upper[" + std::to_string(i) + "][" + std::to_string(t) +
                                      "]: must be finite and > 0");
                else
                    biggest = std::max(biggest, u);
            }
        }
        if (!(in.big_m >= biggest))
            defects.push_back("big_m: must be >= max x_upper (" + std::to_string(biggest) + ")");
    }
    return defects;
}

} // namespace coa::lot
