#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "coa/errors.hpp"
#include "coa/rng.hpp"

namespace coa {

/// Result of a k-means partition. Labels are canonical: clusters are numbered
/// in order of first appearance in the input.
struct Clustering {
    std::vector<int> assignments;
    std::vector<std::vector<double>> centroids;
    double inertia = 0.0;
    int iterations = 0;
};

namespace detail {

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

inline std::vector<int> assign_nearest(const std::vector<std::vector<double>>& points,
                                       const std::vector<std::vector<double>>& centroids) {
    std::vector<int> labels(points.size(), 0);
    for (std::size_t p = 0; p < points.size(); ++p) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            const double d = squared_distance(points[p], centroids[c]);
            if (d < best) {
                best = d;
                labels[p] = static_cast<int>(c);
            }
        }
    }
    return labels;
}

// An empty cluster takes over the point farthest from its own centroid among
// clusters that can spare one; its centroid moves onto that point.
inline void fill_empty_clusters(const std::vector<std::vector<double>>& points,
                                std::vector<std::vector<double>>& centroids,
                                std::vector<int>& labels) {
    const std::size_t k = centroids.size();
    std::vector<std::size_t> sizes(k, 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) continue;
        double far = -1.0;
        std::size_t pick = 0;
        for (std::size_t p = 0; p < points.size(); ++p) {
            const auto own = static_cast<std::size_t>(labels[p]);
            if (sizes[own] < 2) continue;
            const double d = squared_distance(points[p], centroids[own]);
            if (d > far) {
                far = d;
                pick = p;
            }
        }
        --sizes[static_cast<std::size_t>(labels[pick])];
        labels[pick] = static_cast<int>(c);
        sizes[c] = 1;
        centroids[c] = points[pick];
    }
}

inline std::vector<std::vector<double>> cluster_means(const std::vector<std::vector<double>>& points,
                                                      const std::vector<int>& labels,
                                                      std::size_t k) {
    const std::size_t dim = points.front().size();
    std::vector<std::vector<double>> means(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t p = 0; p < points.size(); ++p) {
        const auto c = static_cast<std::size_t>(labels[p]);
        ++counts[c];
        for (std::size_t j = 0; j < dim; ++j) means[c][j] += points[p][j];
    }
    for (std::size_t c = 0; c < k; ++c)
        for (double& v : means[c]) v /= static_cast<double>(counts[c]);
    return means;
}

} // namespace detail

/// Lloyd's k-means with random distinct-point initialization.
///
/// Ties in the assignment step go to the lower centroid index. Stops when the
/// assignment is stable or after `max_iter` assignment steps. The result never
/// contains an empty cluster.
inline Clustering kmeans(const std::vector<std::vector<double>>& points, int k, int max_iter,
                         Rng& rng) {
    if (k < 1) throw DomainError("kmeans: k must be >= 1");
    if (static_cast<std::size_t>(k) > points.size())
        throw DomainError("kmeans: k = " + std::to_string(k) + " exceeds point count " +
                          std::to_string(points.size()));
    const std::size_t dim = points.front().size();
    for (const auto& p : points)
        if (p.size() != dim) throw DomainError("kmeans: points differ in dimension");
    if (max_iter < 1) max_iter = 1;

    const auto kk = static_cast<std::size_t>(k);

    // Partial Fisher-Yates for k distinct indices.
    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<std::vector<double>> centroids;
    for (std::size_t c = 0; c < kk; ++c) {
        const auto r = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(c), static_cast<std::int64_t>(idx.size() - 1)));
        std::swap(idx[c], idx[r]);
        centroids.push_back(points[idx[c]]);
    }

    Clustering out;
    std::vector<int> labels;
    for (int it = 1; it <= max_iter; ++it) {
        auto next = detail::assign_nearest(points, centroids);
        detail::fill_empty_clusters(points, centroids, next);
        out.iterations = it;
        if (next == labels) break;
        labels = std::move(next);
        centroids = detail::cluster_means(points, labels, kk);
    }

    // Renumber clusters by first appearance.
    std::vector<int> remap(kk, -1);
    int used = 0;
    for (int& l : labels) {
        auto& m = remap[static_cast<std::size_t>(l)];
        if (m < 0) m = used++;
        l = m;
    }
    out.centroids.assign(kk, {});
    for (std::size_t c = 0; c < kk; ++c)
        out.centroids[static_cast<std::size_t>(remap[c])] = std::move(centroids[c]);
    out.assignments = std::move(labels);

    out.inertia = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p)
        out.inertia += detail::squared_distance(
            points[p], out.centroids[static_cast<std::size_t>(out.assignments[p])]);
    return out;
}

} // namespace coa
