#include "latmc/clusters.hpp"

#include <numeric>

#include "latmc/errors.hpp"

namespace latmc {

namespace {

// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), SiteId{0});
    }

    SiteId find(SiteId x) noexcept {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(SiteId a, SiteId b) noexcept {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<SiteId> parent_;
    std::vector<std::uint32_t> size_;
};

} // namespace

ClusterLabeling label_clusters(const Configuration& config, const LatticeGeometry& geometry) {
    if (config.size() != geometry.site_count())
        throw ContractViolation("configuration does not match geometry");
    const std::size_t n = geometry.site_count();
    DisjointSets sets(n);
    // Every bond is the +axis bond of exactly one site, wrap included.
    for (SiteId site = 0; site < n; ++site) {
        if (config[site] <= 0)
            continue;
        for (std::size_t axis = 0; axis < geometry.dim(); ++axis) {
            const SiteId next = geometry.forward(site, axis);
            if (config[next] > 0)
                sets.unite(site, next);
        }
    }

    ClusterLabeling out;
    out.labels.assign(n, ClusterLabeling::kNoCluster);
    std::vector<std::int32_t> root_label(n, ClusterLabeling::kNoCluster);
    for (SiteId site = 0; site < n; ++site) {
        if (config[site] <= 0)
            continue;
        const SiteId root = sets.find(site);
        if (root_label[root] == ClusterLabeling::kNoCluster)
            root_label[root] = static_cast<std::int32_t>(out.n_clusters++);
        out.labels[site] = root_label[root];
    }
    return out;
}

ClusterReport report(const ClusterLabeling& labeling) {
    ClusterReport r;
    r.n_clusters = labeling.n_clusters;
    r.sizes.assign(labeling.n_clusters, 0);
    for (std::int32_t label : labeling.labels) {
        if (label == ClusterLabeling::kNoCluster)
            continue;
        if (label < 0 || static_cast<std::size_t>(label) >= r.n_clusters)
            throw ContractViolation("cluster label out of range");
        ++r.sizes[static_cast<std::size_t>(label)];
    }
    double squares = 0.0;
    for (std::size_t s : r.sizes) {
        r.total += s;
        r.largest = std::max(r.largest, s);
        squares += static_cast<double>(s) * static_cast<double>(s);
    }
    if (r.n_clusters > 0) {
        r.mean_size = static_cast<double>(r.total) / static_cast<double>(r.n_clusters);
        r.weighted_mean_size = squares / static_cast<double>(r.total);
    }
    return r;
}

std::size_t SizeHistogram::bin_of(std::size_t size) const {
    if (size < lo || size > hi)
        throw InvalidParams("cluster size outside histogram range");
    return (size - lo) * counts.size() / (hi - lo + 1);
}

SizeHistogram size_histogram(const ClusterReport& report, std::size_t bins) {
    if (bins == 0)
        throw InvalidParams("histogram needs at least one bin");
    SizeHistogram h;
    h.lo = 1;
    h.hi = std::max<std::size_t>(report.largest, 1);
    h.counts.assign(bins, 0);
    for (std::size_t s : report.sizes)
        ++h.counts[h.bin_of(s)];
    return h;
}

} // namespace latmc
