#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "coa/errors.hpp"
#include "coa/lot_sizing.hpp"

namespace coa::lot {

struct OracleResult {
    Table best_plan;
    double best_cost = 0.0;
    bool feasible = false;
    std::uint64_t plans_enumerated = 0;
    /// Sum of violations of best_plan; zero when feasible.
    double total_violation = 0.0;
};

inline constexpr std::uint64_t kOracleMaxPlans = 10'000'000;

/// Number of plans on the {0, step, ..., x_max} grid, saturating above the guard.
inline std::uint64_t grid_plan_count(const Instance& inst, double grid_step, double x_max) {
    const auto levels = static_cast<std::uint64_t>(std::floor(x_max / grid_step + 1e-9)) + 1;
    const std::size_t genes = inst.n_products * inst.n_periods;
    std::uint64_t count = 1;
    for (std::size_t g = 0; g < genes; ++g) {
        if (count > kOracleMaxPlans) return count;
        count *= levels;
    }
    return count;
}

/// Enumerates every production plan with x[i][t] on the grid and returns the
/// cheapest feasible one (lexicographically smallest on ties). If no plan is
/// feasible, returns the plan with the smallest total violation instead.
inline OracleResult solve_exact(const Instance& inst, double grid_step, double x_max) {
    if (!(grid_step > 0.0)) throw DomainError("solve_exact: grid_step must be > 0");
    if (!(x_max >= 0.0)) throw DomainError("solve_exact: x_max must be >= 0");
    const std::uint64_t total = grid_plan_count(inst, grid_step, x_max);
    if (total > kOracleMaxPlans)
        throw DomainError("solve_exact: grid has " + std::to_string(total) +
                          "+ plans, above the limit of " + std::to_string(kOracleMaxPlans));

    const auto levels = static_cast<std::size_t>(std::floor(x_max / grid_step + 1e-9)) + 1;
    const std::size_t genes = inst.n_products * inst.n_periods;
    std::vector<std::size_t> digit(genes, 0);
    Table x(inst.n_products, inst.n_periods);

    OracleResult best;
    best.best_cost = std::numeric_limits<double>::infinity();
    best.total_violation = std::numeric_limits<double>::infinity();
    for (;;) {
        auto flat = x.flat();
        for (std::size_t g = 0; g < genes; ++g) flat[g] = static_cast<double>(digit[g]) * grid_step;
        const Evaluation e = evaluate_plan(x, inst);
        ++best.plans_enumerated;
        if (e.feasible) {
            if (!best.feasible || e.raw_objective < best.best_cost) {
                best.feasible = true;
                best.best_cost = e.raw_objective;
                best.best_plan = x;
                best.total_violation = 0.0;
            }
        } else if (!best.feasible) {
            const double v = e.violations.total();
            if (v < best.total_violation) {
                best.total_violation = v;
                best.best_cost = e.raw_objective;
                best.best_plan = x;
            }
        }

        // Odometer with the last gene fastest: lexicographic order.
        std::size_t g = genes;
        while (g > 0) {
            --g;
            if (++digit[g] < levels) break;
            digit[g] = 0;
            if (g == 0) return best;
        }
        if (genes == 0) return best;
    }
}

} // namespace coa::lot
