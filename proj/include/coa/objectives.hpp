#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>

#include "coa/errors.hpp"
#include "coa/search_space.hpp"

namespace coa {

inline double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

inline double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        const double a = x[j + 1] - x[j] * x[j];
        const double b = 1.0 - x[j];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

inline double rastrigin(std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return s;
}

enum class BuiltinKind { sphere, rosenbrock, rastrigin };

/// Analytic benchmark with its usual box and known minimum value (0).
struct BuiltinObjective {
    BuiltinKind kind;
    std::size_t dim;
    SearchSpace space;
    double optimum = 0.0;

    std::string name() const {
        switch (kind) {
            case BuiltinKind::sphere: return "sphere";
            case BuiltinKind::rosenbrock: return "rosenbrock";
            case BuiltinKind::rastrigin: return "rastrigin";
        }
        return "?";
    }

    double operator()(std::span<const double> x) const {
        switch (kind) {
            case BuiltinKind::sphere: return sphere(x);
            case BuiltinKind::rosenbrock: return rosenbrock(x);
            case BuiltinKind::rastrigin: return rastrigin(x);
        }
        return 0.0;
    }
};

/// sphere on [-5,5], rosenbrock on [-5,10] (minimum at all-ones), rastrigin
/// on [-5.12,5.12].
inline BuiltinObjective make_builtin(const std::string& name, std::size_t dim) {
    if (dim < 1) throw ConfigError("objective dimension must be >= 1");
    if (name == "sphere") return {BuiltinKind::sphere, dim, SearchSpace::uniform(dim, -5.0, 5.0)};
    if (name == "rosenbrock") {
        if (dim < 2) throw ConfigError("rosenbrock needs dim >= 2");
        return {BuiltinKind::rosenbrock, dim, SearchSpace::uniform(dim, -5.0, 10.0)};
    }
    if (name == "rastrigin") return {BuiltinKind::rastrigin, dim, SearchSpace::uniform(dim, -5.12, 5.12)};
    throw ConfigError("unknown objective '" + name + "'");
}

} // namespace coa
