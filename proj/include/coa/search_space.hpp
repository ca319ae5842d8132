#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coa/errors.hpp"

namespace coa {

using Habitat = std::vector<double>;

/// Axis-aligned box [lower, upper] per dimension.
class SearchSpace {
public:
    SearchSpace(std::vector<double> lower, std::vector<double> upper)
        : lower_(std::move(lower)), upper_(std::move(upper)) {
        if (lower_.empty()) throw ConfigError("search space: dim must be >= 1");
        if (lower_.size() != upper_.size())
            throw ConfigError("search space: lower/upper length mismatch");
        for (std::size_t j = 0; j < lower_.size(); ++j) {
            if (!(lower_[j] < upper_[j]))
                throw ConfigError("search space: lower[" + std::to_string(j) +
                                  "] must be < upper[" + std::to_string(j) + "]");
        }
    }

    static SearchSpace uniform(std::size_t dim, double lo, double hi) {
        return SearchSpace(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
    }

    std::size_t dim() const { return lower_.size(); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    double range(std::size_t j) const { return upper_[j] - lower_[j]; }

    double clip(std::size_t j, double v) const { return std::clamp(v, lower_[j], upper_[j]); }

    void clip(std::span<double> h) const {
        for (std::size_t j = 0; j < h.size(); ++j) h[j] = clip(j, h[j]);
    }

    bool contains(std::span<const double> h) const {
        if (h.size() != dim()) return false;
        for (std::size_t j = 0; j < h.size(); ++j)
            if (!(h[j] >= lower_[j] && h[j] <= upper_[j])) return false;
        return true;
    }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// Infinity-norm distance between two habitats.
inline double linf_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
    return d;
}

/// Infinity-norm distance with each coordinate divided by the dimension's range.
inline double normalized_linf_distance(std::span<const double> a, std::span<const double> b,
                                       const SearchSpace& space) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        d = std::max(d, std::abs(a[j] - b[j]) / space.range(j));
    return d;
}

} // namespace coa
