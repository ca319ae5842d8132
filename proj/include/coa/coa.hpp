#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coa/clustering.hpp"
#include "coa/errors.hpp"
#include "coa/rng.hpp"
#include "coa/run_result.hpp"
#include "coa/search_space.hpp"

namespace coa {

/// Tunables for the cuckoo optimizer. The population sizes default to the
/// tuned setting (7 initial, 2..4 eggs, 200 iterations, 3 clusters, 8 living).
struct COAConfig {
    int n_initial = 7;
    int min_eggs = 2;
    int max_eggs = 4;
    int max_iterations = 200;
    int k_clusters = 3;
    int max_living = 8;
    double alpha = 5.0;             // egg-laying radius scale
    double cull_fraction = 0.10;    // share of each egg batch destroyed
    double lambda_max = 1.0;        // migration step fraction drawn in [0, lambda_max]
    double phi_bound = std::numbers::pi / 6.0;  // deflection drawn in [-phi_bound, phi_bound]
    double convergence_ratio = 0.95;
    double convergence_eps = 1e-4;
    int kmeans_max_iter = 100;
    std::uint64_t seed = 1;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const {
        auto fail = [](const std::string& what) { throw ConfigError("COAConfig: " + what); };
        if (n_initial < 1) fail("n_initial must be >= 1");
        if (min_eggs < 1) fail("min_eggs must be >= 1");
        if (max_eggs < min_eggs) fail("max_eggs must be >= min_eggs");
        if (max_iterations < 1) fail("max_iterations must be >= 1");
        if (k_clusters < 2) fail("k_clusters must be >= 2");
        if (k_clusters > max_living) fail("k_clusters must be <= max_living");
        if (n_initial < k_clusters) fail("n_initial must be >= k_clusters");
        if (!(alpha >= 0.0)) fail("alpha must be >= 0");
        if (!(cull_fraction >= 0.0 && cull_fraction < 1.0)) fail("cull_fraction must be in [0,1)");
        if (!(lambda_max >= 0.0)) fail("lambda_max must be >= 0");
        if (!(phi_bound >= 0.0)) fail("phi_bound must be >= 0");
        if (!(convergence_ratio > 0.0 && convergence_ratio <= 1.0))
            fail("convergence_ratio must be in (0,1]");
        if (!(convergence_eps > 0.0)) fail("convergence_eps must be > 0");
        if (kmeans_max_iter < 1) fail("kmeans_max_iter must be >= 1");
    }
};

struct Cuckoo {
    Habitat habitat;
    int eggs = 0;
    double cost = 0.0;
};

/// A laid egg together with its evaluated cost.
struct Egg {
    Habitat habitat;
    double cost = 0.0;
};

// ---------------------------------------------------------------------------
// Phases
// ---------------------------------------------------------------------------

/// Uniform random population of `config.n_initial` cuckoos, evaluated with `cost`.
template <class CostFn>
std::vector<Cuckoo> init_population(const SearchSpace& space, const COAConfig& config, Rng& rng,
                                    CostFn&& cost) {
    config.validate();
    std::vector<Cuckoo> pop(static_cast<std::size_t>(config.n_initial));
    for (auto& c : pop) {
        c.habitat.resize(space.dim());
        for (std::size_t j = 0; j < space.dim(); ++j)
            c.habitat[j] = rng.uniform(space.lower()[j], space.upper()[j]);
        c.eggs = static_cast<int>(rng.uniform_int(config.min_eggs, config.max_eggs));
    }
    for (auto& c : pop) c.cost = cost(c.habitat);
    return pop;
}

/// Egg-laying radius per dimension: alpha * own/total * (upper - lower).
inline std::vector<double> compute_elr(int own_eggs, int total_eggs, double alpha,
                                       const SearchSpace& space) {
    if (total_eggs <= 0) throw DomainError("compute_elr: total_eggs must be > 0");
    if (own_eggs <= 0 || own_eggs > total_eggs)
        throw DomainError("compute_elr: own_eggs must be in (0, total_eggs]");
    if (!(alpha >= 0.0)) throw DomainError("compute_elr: alpha must be >= 0");
    const double share = static_cast<double>(own_eggs) / static_cast<double>(total_eggs);
    std::vector<double> radius(space.dim());
    for (std::size_t j = 0; j < space.dim(); ++j) radius[j] = alpha * share * space.range(j);
    return radius;
}

/// Lays `cuckoo.eggs` eggs uniformly in the box of half-width `radius` around
/// the parent, clipped to the space. An egg within `dedup_eps` (infinity norm)
/// of an earlier egg in the batch is re-drawn once and then kept.
inline std::vector<Habitat> lay_eggs(const Cuckoo& cuckoo, std::span<const double> radius,
                                     const SearchSpace& space, double dedup_eps, Rng& rng) {
    auto draw = [&] {
        Habitat egg(space.dim());
        for (std::size_t j = 0; j < space.dim(); ++j) {
            const double r = radius[j];
            egg[j] = space.clip(j, rng.uniform(cuckoo.habitat[j] - r, cuckoo.habitat[j] + r));
        }
        return egg;
    };
    auto duplicate = [&](const std::vector<Habitat>& laid, const Habitat& egg) {
        return std::any_of(laid.begin(), laid.end(), [&](const Habitat& other) {
            return linf_distance(other, egg) <= dedup_eps;
        });
    };

    std::vector<Habitat> laid;
    laid.reserve(static_cast<std::size_t>(std::max(cuckoo.eggs, 0)));
    for (int e = 0; e < cuckoo.eggs; ++e) {
        Habitat egg = draw();
        if (duplicate(laid, egg)) egg = draw();
        laid.push_back(std::move(egg));
    }
    return laid;
}

/// Number of eggs `cull_worst` destroys out of `count`.
inline std::size_t cull_count(std::size_t count, double cull_fraction) {
    // The small slack absorbs representation error such as 0.29 * 100 = 28.999...
    return static_cast<std::size_t>(std::floor(cull_fraction * static_cast<double>(count) + 1e-9));
}

/// Removes the floor(cull_fraction * n) highest-cost eggs. Among equal costs
/// the later egg goes first. Survivors keep their relative order.
inline std::vector<Egg> cull_worst(std::vector<Egg> eggs, double cull_fraction) {
    if (!(cull_fraction >= 0.0 && cull_fraction < 1.0))
        throw DomainError("cull_worst: cull_fraction must be in [0,1)");
    const std::size_t remove = cull_count(eggs.size(), cull_fraction);
    if (remove == 0) return eggs;

    std::vector<std::size_t> order(eggs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eggs[a].cost < eggs[b].cost; });
    std::vector<bool> dead(eggs.size(), false);
    for (std::size_t r = order.size() - remove; r < order.size(); ++r) dead[order[r]] = true;

    std::vector<Egg> survivors;
    survivors.reserve(eggs.size() - remove);
    for (std::size_t i = 0; i < eggs.size(); ++i)
        if (!dead[i]) survivors.push_back(std::move(eggs[i]));
    return survivors;
}

/// Goal point for migration: the lowest-cost member of the cluster with the
/// lowest mean cost. Ties go to the lower cluster label, then the lower index.
inline Habitat select_goal(const std::vector<Cuckoo>& population, std::span<const int> assignments) {
    if (population.empty()) throw DomainError("select_goal: empty population");
    if (assignments.size() != population.size())
        throw DomainError("select_goal: one label per cuckoo required");

    const int k = *std::max_element(assignments.begin(), assignments.end()) + 1;
    std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < population.size(); ++i) {
        const auto c = static_cast<std::size_t>(assignments[i]);
        sum[c] += population[i].cost;
        ++count[c];
    }
    int best_cluster = -1;
    double best_mean = 0.0;
    for (int c = 0; c < k; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        if (count[cc] == 0) continue;
        const double mean = sum[cc] / count[cc];
        if (best_cluster < 0 || mean < best_mean) {
            best_cluster = c;
            best_mean = mean;
        }
    }
    std::size_t goal = population.size();
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (assignments[i] != best_cluster) continue;
        if (goal == population.size() || population[i].cost < population[goal].cost) goal = i;
    }
    return population[goal].habitat;
}

/// Moves `current` toward `goal`: the step lambda*(goal - current) is rotated
/// by `phi` inside the plane of the step and an orthogonal direction, then the
/// result is clipped to the space.
///
/// In 2-D the orthogonal direction is the step turned by +90 degrees; above
/// that it is a random unit vector orthogonal to the step. In 1-D the step is
/// scaled by cos(phi).
inline Habitat migrate(std::span<const double> current, std::span<const double> goal,
                       double lambda, double phi, const SearchSpace& space, Rng& rng) {
    const std::size_t dim = current.size();
    Habitat step(dim);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        step[j] = lambda * (goal[j] - current[j]);
        norm2 += step[j] * step[j];
    }
    Habitat next(current.begin(), current.end());
    if (norm2 == 0.0) return next;

    if (dim == 1) {
        next[0] += step[0] * std::cos(phi);
    } else if (phi == 0.0) {
        for (std::size_t j = 0; j < dim; ++j) next[j] += step[j];
    } else {
        const double norm = std::sqrt(norm2);
        std::vector<double> ortho(dim, 0.0);
        if (dim == 2) {
            ortho[0] = -step[1] / norm;
            ortho[1] = step[0] / norm;
        } else {
            // Gram-Schmidt on a Gaussian draw; retry on the (measure-zero) degenerate case.
            for (;;) {
                double dot = 0.0;
                for (std::size_t j = 0; j < dim; ++j) {
                    ortho[j] = rng.normal();
                    dot += ortho[j] * step[j];
                }
                double on2 = 0.0;
                for (std::size_t j = 0; j < dim; ++j) {
                    ortho[j] -= dot / norm2 * step[j];
                    on2 += ortho[j] * ortho[j];
                }
                if (on2 > 1e-24) {
                    const double on = std::sqrt(on2);
                    for (double& v : ortho) v /= on;
                    break;
                }
            }
        }
        const double c = std::cos(phi);
        const double s = std::sin(phi) * norm;
        for (std::size_t j = 0; j < dim; ++j) next[j] += c * step[j] + s * ortho[j];
    }
    space.clip(next);
    return next;
}

/// Draws lambda and phi from the config ranges and migrates.
inline Habitat migrate(std::span<const double> current, std::span<const double> goal,
                       const COAConfig& config, const SearchSpace& space, Rng& rng) {
    const double lambda = rng.uniform(0.0, config.lambda_max);
    const double phi = rng.uniform(-config.phi_bound, config.phi_bound);
    return migrate(current, goal, lambda, phi, space, rng);
}

/// Keeps the `max_living` lowest-cost cuckoos (ties by earlier index), in
/// their original order.
inline std::vector<Cuckoo> enforce_capacity(std::vector<Cuckoo> population, int max_living) {
    if (max_living < 0 || population.size() <= static_cast<std::size_t>(max_living))
        return population;
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return population[a].cost < population[b].cost;
    });
    std::vector<bool> keep(population.size(), false);
    for (std::size_t r = 0; r < static_cast<std::size_t>(max_living); ++r) keep[order[r]] = true;
    std::vector<Cuckoo> out;
    out.reserve(static_cast<std::size_t>(max_living));
    for (std::size_t i = 0; i < population.size(); ++i)
        if (keep[i]) out.push_back(std::move(population[i]));
    return out;
}

/// True when strictly more than `convergence_ratio` of the population lies
/// within `convergence_eps` of `incumbent_best` (range-normalized infinity norm).
inline bool check_convergence(const std::vector<Cuckoo>& population,
                              std::span<const double> incumbent_best, const SearchSpace& space,
                              const COAConfig& config) {
    if (population.empty()) throw DomainError("check_convergence: empty population");
    std::size_t close = 0;
    for (const auto& c : population)
        if (normalized_linf_distance(c.habitat, incumbent_best, space) <= config.convergence_eps)
            ++close;
    return static_cast<double>(close) / static_cast<double>(population.size()) >
           config.convergence_ratio;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

/// Minimizes `objective` over `space`.
///
/// Each iteration lays eggs within every cuckoo's radius, culls the worst of
/// the batch, promotes the survivors to cuckoos, trims the population to
/// `max_living`, clusters it, and migrates everyone toward the best cluster's
/// best member. The best point ever evaluated is kept outside the population.
///
/// `observer(iteration, population)` is called at the end of every iteration.
template <class Objective, class Observer>
RunResult run(Objective&& objective, const SearchSpace& space, const COAConfig& config,
              Observer&& observer) {
    config.validate();
    Rng rng(config.seed);
    detail::TrackedObjective<std::remove_reference_t<Objective>> eval(objective);

    eval.set_iteration(0);
    std::vector<Cuckoo> pop = init_population(space, config, rng, eval);

    RunResult result;
    for (int it = 1; it <= config.max_iterations; ++it) {
        eval.set_iteration(it);

        int total_eggs = 0;
        for (const auto& c : pop) total_eggs += c.eggs;

        std::vector<Egg> batch;
        for (const auto& c : pop) {
            const auto radius = compute_elr(c.eggs, total_eggs, config.alpha, space);
            for (auto& h : lay_eggs(c, radius, space, config.convergence_eps, rng))
                batch.push_back({std::move(h), 0.0});
        }
        for (auto& e : batch) e.cost = eval(e.habitat);

        for (auto& e : cull_worst(std::move(batch), config.cull_fraction)) {
            Cuckoo chick;
            chick.habitat = std::move(e.habitat);
            chick.cost = e.cost;
            chick.eggs = static_cast<int>(rng.uniform_int(config.min_eggs, config.max_eggs));
            pop.push_back(std::move(chick));
        }
        pop = enforce_capacity(std::move(pop), config.max_living);

        std::vector<std::vector<double>> points;
        points.reserve(pop.size());
        for (const auto& c : pop) points.push_back(c.habitat);
        const int k = std::min(config.k_clusters, static_cast<int>(pop.size()));
        const Clustering groups = kmeans(points, k, config.kmeans_max_iter, rng);
        const Habitat goal = select_goal(pop, groups.assignments);

        for (auto& c : pop) c.habitat = migrate(c.habitat, goal, config, space, rng);
        for (auto& c : pop) c.cost = eval(c.habitat);

        result.trace.push_back(detail::make_trace_point(
            it, pop, eval.best_habitat(), eval.best_cost(),
            [](const Cuckoo& c) -> const Habitat& { return c.habitat; },
            [](const Cuckoo& c) { return c.cost; }));
        observer(it, std::as_const(pop));

        if (check_convergence(pop, eval.best_habitat(), space, config)) {
            result.terminated_by = Termination::converged;
            break;
        }
    }
    result.iterations_used = static_cast<int>(result.trace.size());
    result.best_cost = eval.best_cost();
    result.best_habitat = eval.best_habitat();
    return result;
}

template <class Objective>
RunResult run(Objective&& objective, const SearchSpace& space, const COAConfig& config) {
    return run(std::forward<Objective>(objective), space, config,
               [](int, const std::vector<Cuckoo>&) {});
}

} // namespace coa
