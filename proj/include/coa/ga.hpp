#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "coa/errors.hpp"
#include "coa/rng.hpp"
#include "coa/run_result.hpp"
#include "coa/search_space.hpp"

namespace coa {

/// Real-coded GA settings. Defaults give a plain baseline: binary tournament,
/// BLX-0.5 crossover, Gaussian mutation at 10% of the range, one elite.
struct GAConfig {
    int pop_size = 30;
    int generations = 200;
    int tournament_size = 2;
    double crossover_rate = 0.9;
    double blend_alpha = 0.5;
    double mutation_rate = 0.1;
    double mutation_sigma_fraction = 0.1;
    int elite_count = 1;
    std::uint64_t seed = 1;

    void validate() const {
        auto fail = [](const std::string& what) { throw ConfigError("GAConfig: " + what); };
        if (pop_size < 2) fail("pop_size must be >= 2");
        if (generations < 1) fail("generations must be >= 1");
        if (tournament_size < 1) fail("tournament_size must be >= 1");
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) fail("crossover_rate must be in [0,1]");
        if (!(blend_alpha >= 0.0)) fail("blend_alpha must be >= 0");
        if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) fail("mutation_rate must be in [0,1]");
        if (!(mutation_sigma_fraction >= 0.0)) fail("mutation_sigma_fraction must be >= 0");
        if (elite_count < 0 || elite_count >= pop_size) fail("elite_count must be in [0, pop_size)");
    }
};

namespace detail {
struct Individual {
    Habitat genes;
    double cost = 0.0;
};
} // namespace detail

/// Generational GA minimizing `objective` over `space`. One trace point per
/// generation, same shape as the COA trace.
template <class Objective>
RunResult run_ga(Objective&& objective, const SearchSpace& space, const GAConfig& config) {
    using detail::Individual;
    config.validate();
    Rng rng(config.seed);
    detail::TrackedObjective<std::remove_reference_t<Objective>> eval(objective);
    const std::size_t dim = space.dim();
    const auto n = static_cast<std::size_t>(config.pop_size);

    eval.set_iteration(0);
    std::vector<Individual> pop(n);
    for (auto& ind : pop) {
        ind.genes.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) ind.genes[j] = rng.uniform(space.lower()[j], space.upper()[j]);
    }
    for (auto& ind : pop) ind.cost = eval(ind.genes);

    auto tournament = [&]() -> const Individual& {
        std::size_t winner = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        for (int r = 1; r < config.tournament_size; ++r) {
            const auto c = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
            if (pop[c].cost < pop[winner].cost || (pop[c].cost == pop[winner].cost && c < winner))
                winner = c;
        }
        return pop[winner];
    };

    RunResult result;
    for (int gen = 1; gen <= config.generations; ++gen) {
        eval.set_iteration(gen);

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pop[a].cost < pop[b].cost; });

        std::vector<Individual> next;
        next.reserve(n);
        for (int e = 0; e < config.elite_count; ++e) next.push_back(pop[order[static_cast<std::size_t>(e)]]);

        const std::size_t first_child = next.size();
        while (next.size() < n) {
            const Individual& a = tournament();
            const Individual& b = tournament();
            Individual child{a.genes, 0.0};
            if (rng.uniform() < config.crossover_rate) {
                for (std::size_t j = 0; j < dim; ++j) {
                    const double lo = std::min(a.genes[j], b.genes[j]);
                    const double hi = std::max(a.genes[j], b.genes[j]);
                    const double ext = config.blend_alpha * (hi - lo);
                    child.genes[j] = rng.uniform(lo - ext, hi + ext);
                }
            }
            for (std::size_t j = 0; j < dim; ++j) {
                if (rng.uniform() < config.mutation_rate)
                    child.genes[j] += rng.normal() * config.mutation_sigma_fraction * space.range(j);
            }
            space.clip(child.genes);
            next.push_back(std::move(child));
        }
        for (std::size_t c = first_child; c < n; ++c) next[c].cost = eval(next[c].genes);
        pop = std::move(next);

        result.trace.push_back(detail::make_trace_point(
            gen, pop, eval.best_habitat(), eval.best_cost(),
            [](const Individual& i) -> const Habitat& { return i.genes; },
            [](const Individual& i) { return i.cost; }));
    }
    result.iterations_used = static_cast<int>(result.trace.size());
    result.terminated_by = Termination::max_iterations;
    result.best_cost = eval.best_cost();
    result.best_habitat = eval.best_habitat();
    return result;
}

} // namespace coa
