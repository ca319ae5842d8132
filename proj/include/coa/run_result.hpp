#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "coa/errors.hpp"
#include "coa/search_space.hpp"

namespace coa {

enum class Termination { converged, max_iterations };

inline const char* to_string(Termination t) {
    return t == Termination::converged ? "converged" : "max_iterations";
}

struct TracePoint {
    int iteration = 0;
    double best_cost_so_far = 0.0;
    double population_mean_cost = 0.0;
    /// Largest single-coordinate distance from any member to the incumbent best.
    double population_spread = 0.0;
};

/// Outcome of one optimizer run; shared by COA and the GA baseline.
struct RunResult {
    Habitat best_habitat;
    double best_cost = std::numeric_limits<double>::infinity();
    int iterations_used = 0;
    Termination terminated_by = Termination::max_iterations;
    std::vector<TracePoint> trace;
};

namespace detail {

// Wraps an objective so that every evaluation updates the best-ever record
// and failures carry the iteration they happened in.
template <class Objective>
class TrackedObjective {
public:
    explicit TrackedObjective(Objective& f) : f_(f) {}

    void set_iteration(int it) { iteration_ = it; }

    double operator()(const Habitat& h) {
        double cost;
        try {
            cost = static_cast<double>(f_(std::span<const double>(h)));
        } catch (const std::exception& e) {
            throw EvaluationError("objective failed at iteration " + std::to_string(iteration_) +
                                  ": " + e.what());
        }
        if (std::isnan(cost))
            throw EvaluationError("objective returned NaN at iteration " +
                                  std::to_string(iteration_));
        if (cost < best_cost_ || best_habitat_.empty()) {
            best_cost_ = cost;
            best_habitat_ = h;
        }
        return cost;
    }

    double best_cost() const { return best_cost_; }
    const Habitat& best_habitat() const { return best_habitat_; }

private:
    Objective& f_;
    int iteration_ = 0;
    double best_cost_ = std::numeric_limits<double>::infinity();
    Habitat best_habitat_;
};

template <class Member, class HabitatOf, class CostOf>
TracePoint make_trace_point(int iteration, const std::vector<Member>& pop, const Habitat& best,
                            double best_cost, HabitatOf habitat_of, CostOf cost_of) {
    TracePoint tp;
    tp.iteration = iteration;
    tp.best_cost_so_far = best_cost;
    double sum = 0.0;
    double spread = 0.0;
    for (const auto& m : pop) {
        sum += cost_of(m);
        spread = std::max(spread, linf_distance(habitat_of(m), best));
    }
    tp.population_mean_cost = pop.empty() ? 0.0 : sum / static_cast<double>(pop.size());
    tp.population_spread = spread;
    return tp;
}

} // namespace detail
} // namespace coa
