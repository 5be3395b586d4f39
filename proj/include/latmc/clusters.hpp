#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latmc/lattice.hpp"

namespace latmc {

/**
 * Connected components of corrupt sites under the lattice's periodic
 * nearest-neighbor adjacency. Honest sites carry kNoCluster. Cluster ids run
 * 0..n_clusters-1 ordered by the smallest site index in each cluster.
 */
struct ClusterLabeling {
    static constexpr std::int32_t kNoCluster = -1;

    std::vector<std::int32_t> labels;
    std::size_t n_clusters = 0;

    bool operator==(const ClusterLabeling&) const = default;
};

struct ClusterReport {
    std::size_t n_clusters = 0;
    std::vector<std::size_t> sizes;  // indexed by cluster id
    std::size_t largest = 0;
    std::uint64_t total = 0;         // sum of sizes (= U)
    double mean_size = 0.0;          // total / n_clusters
    double weighted_mean_size = 0.0; // sum size^2 / total
};

// Linear bins over [1, largest]; counts sum to n_clusters.
struct SizeHistogram {
    std::size_t lo = 1;
    std::size_t hi = 1;
    std::vector<std::size_t> counts;

    std::size_t bin_of(std::size_t size) const;
};

ClusterLabeling label_clusters(const Configuration& config, const LatticeGeometry& geometry);

ClusterReport report(const ClusterLabeling& labeling);

// Throws InvalidParams when bins == 0.
SizeHistogram size_histogram(const ClusterReport& report, std::size_t bins);

} // namespace latmc
