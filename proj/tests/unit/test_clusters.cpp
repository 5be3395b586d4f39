#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "latmc/clusters.hpp"
#include "latmc/errors.hpp"
#include "latmc/observables.hpp"
#include "support/oracles.hpp"

using namespace latmc;
namespace lt = latmc::testing;

namespace {

void check_against_bfs(const std::vector<std::size_t>& lengths, const std::vector<State>& states) {
    const auto g = build_geometry(lengths);
    const Configuration c(states);
    const auto labeling = label_clusters(c, g);
    const auto expected = lt::bfs_labels(lengths, states);
    REQUIRE(labeling.labels == expected);
    const auto r = report(labeling);
    REQUIRE(r.total == total_profit(c));
    const auto max_label = std::max_element(expected.begin(), expected.end());
    REQUIRE(r.n_clusters == static_cast<std::size_t>(*max_label + 1));
}

} // namespace

TEST_CASE("label_clusters basic shapes") {
    SUBCASE("all corrupt 2x2") {
        const auto r = report(label_clusters(Configuration(4, kCorrupt), build_geometry({2, 2})));
        CHECK(r.n_clusters == 1);
        CHECK(r.sizes == std::vector<std::size_t>{4});
    }
    SUBCASE("checkerboard 4x4 isolates every corrupt site") {
        const auto r = report(label_clusters(Configuration(lt::checkerboard({4, 4})), build_geometry({4, 4})));
        CHECK(r.n_clusters == 8);
        CHECK(std::all_of(r.sizes.begin(), r.sizes.end(), [](std::size_t s) { return s == 1; }));
    }
    SUBCASE("periodic wrap joins opposite edges") {
        const auto g = build_geometry({5, 5});
        Configuration c(25, kHonest);
        c.set(g.encode({2, 0}), kCorrupt);
        c.set(g.encode({2, 4}), kCorrupt);
        const auto labeling = label_clusters(c, g);
        CHECK(labeling.n_clusters == 1);
    }
    SUBCASE("labels ordered by smallest member") {
        const auto g = build_geometry({6});
        const Configuration c(std::vector<State>{-1, 1, -1, 1, 1, -1});
        const auto labeling = label_clusters(c, g);
        CHECK(labeling.labels == std::vector<std::int32_t>{-1, 0, -1, 1, 1, -1});
    }
    SUBCASE("mismatched geometry") {
        CHECK_THROWS_AS(label_clusters(Configuration(5, kCorrupt), build_geometry({2, 2})), ContractViolation);
    }
}

TEST_CASE("report aggregates") {
    SUBCASE("all honest") {
        const auto r = report(label_clusters(Configuration(27, kHonest), build_geometry({3, 3, 3})));
        CHECK(r.n_clusters == 0);
        CHECK(r.sizes.empty());
        CHECK(r.largest == 0);
        CHECK(r.mean_size == 0.0);
    }
    SUBCASE("all corrupt 3x3x3") {
        const auto r = report(label_clusters(Configuration(27, kCorrupt), build_geometry({3, 3, 3})));
        CHECK(r.n_clusters == 1);
        CHECK(r.largest == 27);
        CHECK(r.mean_size == 27.0);
        CHECK(r.weighted_mean_size == 27.0);
    }
    SUBCASE("single corrupt site") {
        Configuration c(27, kHonest);
        c.set(13, kCorrupt);
        const auto r = report(label_clusters(c, build_geometry({3, 3, 3})));
        CHECK(r.n_clusters == 1);
        CHECK(r.sizes == std::vector<std::size_t>{1});
    }
    SUBCASE("sizes 1,1,4") {
        ClusterLabeling labeling;
        labeling.n_clusters = 3;
        labeling.labels = {0, -1, 1, 2, 2, 2, 2, -1};
        const auto r = report(labeling);
        CHECK(r.largest == 4);
        CHECK(r.mean_size == 2.0);
        CHECK(r.weighted_mean_size == doctest::Approx(18.0 / 6.0));
    }
}

TEST_CASE("size_histogram") {
    ClusterReport r;
    r.n_clusters = 3;
    r.sizes = {1, 1, 4};
    r.largest = 4;
    const auto h = size_histogram(r, 4);
    CHECK(h.counts == std::vector<std::size_t>{2, 0, 0, 1});
    CHECK(h.counts[h.bin_of(1)] == 2);
    CHECK(h.counts[h.bin_of(4)] == 1);
    CHECK(size_histogram(r, 1).counts == std::vector<std::size_t>{3});
    CHECK_THROWS_AS(size_histogram(r, 0), InvalidParams);

    const auto empty = size_histogram(ClusterReport{}, 5);
    CHECK(empty.counts == std::vector<std::size_t>(5, 0));

    Rng rng(31);
    const auto g = build_geometry({8, 8, 8});
    for (int i = 0; i < 20; ++i) {
        const auto states = lt::random_states(g.site_count(), rng, 0.25);
        const auto bfs = lt::bfs_labels({8, 8, 8}, states);
        const auto n = static_cast<std::size_t>(*std::max_element(bfs.begin(), bfs.end()) + 1);
        const auto hist = size_histogram(report(label_clusters(Configuration(states), g)), 7);
        REQUIRE(std::accumulate(hist.counts.begin(), hist.counts.end(), std::size_t{0}) == n);
    }
}

TEST_CASE("labeling equals BFS flood fill") {
    SUBCASE("exhaustive 2x2") {
        for (unsigned x = 0; x < 16; ++x) {
            std::vector<State> s(4);
            for (unsigned i = 0; i < 4; ++i)
                s[i] = (x >> i) & 1U ? kCorrupt : kHonest;
            check_against_bfs({2, 2}, s);
        }
    }
    SUBCASE("exhaustive 2x2x2") {
        for (unsigned x = 0; x < 256; ++x) {
            std::vector<State> s(8);
            for (unsigned i = 0; i < 8; ++i)
                s[i] = (x >> i) & 1U ? kCorrupt : kHonest;
            check_against_bfs({2, 2, 2}, s);
        }
    }
    SUBCASE("random geometries up to 512 sites") {
        Rng rng(77);
        for (const std::vector<std::size_t>& lengths :
             {std::vector<std::size_t>{512}, {16, 32}, {4, 4, 4}, {8, 8, 8}, {3, 7, 5}, {2, 16, 16}}) {
            for (int i = 0; i < 100; ++i) {
                const double p = 0.1 + 0.8 * rng.uniform_real();
                std::size_t m = 1;
                for (auto l : lengths)
                    m *= l;
                check_against_bfs(lengths, lt::random_states(m, rng, p));
            }
        }
    }
}

TEST_CASE("labeling partition is translation invariant") {
    const auto g = build_geometry({6, 5, 4});
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const Configuration c(lt::random_states(g.site_count(), rng, 0.4));
        const std::vector<std::ptrdiff_t> offset = {2, -1, 3};
        const auto moved = translate(g, c, offset);
        const auto a = label_clusters(c, g);
        const auto b = label_clusters(moved, g);
        REQUIRE(a.n_clusters == b.n_clusters);
        // Same-cluster relation is preserved pointwise.
        for (SiteId s = 0; s < g.site_count(); ++s) {
            if (c[s] <= 0)
                continue;
            SiteId ms = s;
            for (std::size_t axis = 0; axis < 3; ++axis)
                ms = g.shift(ms, axis, offset[axis]);
            for (SiteId t = s + 1; t < g.site_count(); t += 7) {
                if (c[t] <= 0)
                    continue;
                SiteId mt = t;
                for (std::size_t axis = 0; axis < 3; ++axis)
                    mt = g.shift(mt, axis, offset[axis]);
                REQUIRE((a.labels[s] == a.labels[t]) == (b.labels[ms] == b.labels[mt]));
            }
        }
    }
}
