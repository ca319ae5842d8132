// Solves a generated 3-product, 5-period instance with COA and the GA
// baseline and prints the best production plans.
#include <cstdio>

#include "coa/coa.hpp"
#include "coa/ga.hpp"
#include "coa/lot_sizing.hpp"

namespace lot = coa::lot;

static void print_plan(const char* name, const coa::Habitat& h, const lot::Instance& inst) {
    const auto e = lot::penalized_fitness(h, inst);
    const auto x = lot::decode(h, inst);
    std::printf("%s: objective %.2f (%s)\n", name, e.raw_objective, e.feasible ? "feasible" : "infeasible");
    for (std::size_t i = 0; i < inst.n_products; ++i) {
        std::printf("  product %zu:", i);
        for (std::size_t t = 0; t < inst.n_periods; ++t) std::printf(" %8.2f", x(i, t));
        std::printf("\n");
    }
}

int main() {
    const auto inst = lot::generate_instance(7, 3, 5, 2);
    const auto space = lot::search_space(inst);
    auto fitness = [&](std::span<const double> h) { return lot::penalized_fitness(h, inst).penalized_cost; };

    const auto cuckoo = coa::run(fitness, space, coa::COAConfig{});
    const auto genetic = coa::run_ga(fitness, space, coa::GAConfig{});
    print_plan("coa", cuckoo.best_habitat, inst);
    print_plan("ga", genetic.best_habitat, inst);
}
