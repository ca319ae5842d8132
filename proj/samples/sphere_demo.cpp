// Minimizes a 5-d sphere with the cuckoo optimizer and prints the trace.
#include <cstdio>

#include "coa/coa.hpp"
#include "coa/objectives.hpp"

int main() {
    coa::COAConfig config;
    config.alpha = 0.3;
    config.seed = 42;

    const auto space = coa::SearchSpace::uniform(5, -5.0, 5.0);
    const auto result = coa::run(coa::sphere, space, config);

    for (const auto& tp : result.trace)
        std::printf("%4d  best %.6g  mean %.6g  spread %.3g\n", tp.iteration, tp.best_cost_so_far,
                    tp.population_mean_cost, tp.population_spread);
    std::printf("best %.6g after %d iterations (%s)\n", result.best_cost, result.iterations_used,
                coa::to_string(result.terminated_by));
}
