#include "doctest.h"

#include <array>
#include <cmath>
#include <memory>

#include "latmc/errors.hpp"
#include "latmc/observables.hpp"
#include "latmc/oracle.hpp"
#include "latmc/run.hpp"
#include "latmc/sampler.hpp"
#include "support/oracles.hpp"

using namespace latmc;
namespace lt = latmc::testing;

namespace {

auto geometry(std::vector<std::size_t> lengths) {
    return std::make_shared<const LatticeGeometry>(build_geometry(std::move(lengths)));
}

auto uniform(double j) { return std::make_shared<const CouplingModel>(CouplingModel::uniform(j)); }

ChainParams params(double t, std::uint64_t steps, std::uint64_t seed, InitSpec init = InitSpec::random(0.5)) {
    ChainParams p;
    p.temperature = t;
    p.steps = steps;
    p.seed = seed;
    p.init = init;
    return p;
}

} // namespace

TEST_CASE("acceptance_probability") {
    CHECK(acceptance_probability(-4.0, 0.3) == 1.0);
    CHECK(acceptance_probability(-4.0, 30.0) == 1.0);
    CHECK(acceptance_probability(0.0, 2.0) == 1.0);
    CHECK(acceptance_probability(12.0, 1.0) == doctest::Approx(6.144212353e-6).epsilon(1e-9));
    CHECK(acceptance_probability(12.0, 1.0) == std::exp(-12.0));
}

TEST_CASE("chain parameter validation") {
    CHECK_THROWS_AS(Chain(geometry({3, 3}), uniform(1), params(1.0, 0, 1)), InvalidParams);
    CHECK_THROWS_AS(Chain(geometry({3, 3}), uniform(1), params(0.0, 10, 1)), InvalidParams);
    CHECK_THROWS_AS(Chain(geometry({3, 3}), uniform(1), params(-1.0, 10, 1)), InvalidParams);
    CHECK_THROWS_AS(run_chain(geometry({3, 3}), uniform(1), params(1.0, 0, 1), {}), InvalidParams);
    const auto p = params(0.37, 5, 1);
    CHECK(std::abs(p.beta() * p.temperature - 1.0) < 1e-12);
}

TEST_CASE("frozen and anti-conformist limits") {
    SUBCASE("T -> 0 rejects every flip of the aligned state") {
        Chain chain(geometry({3, 3, 3}), uniform(1), params(1e-3, 1000, 5, InitSpec::all_corrupt()));
        for (int i = 0; i < 1000; ++i) {
            const auto out = chain.step();
            REQUIRE(out.delta_w == 12.0);
            REQUIRE_FALSE(out.accepted);
        }
        CHECK(chain.objective() == -81.0);
    }
    SUBCASE("J = -1 accepts the first flip without a uniform draw") {
        Chain chain(geometry({3, 3, 3}), uniform(-1), params(0.8, 10, 5, InitSpec::all_corrupt()));
        const auto out = chain.step();
        CHECK(out.delta_w == -12.0);
        CHECK(out.accepted);
        CHECK(chain.rng().real_draws() == 0);
        CHECK(chain.objective() == 81.0 - 12.0);
    }
}

TEST_CASE("golden seeded trajectory") {
    // seed 7, [2,2], J = 1, T = 2, random(0.5) init; recorded once from this
    // implementation and frozen.
    Chain chain(geometry({2, 2}), uniform(1), params(2.0, 100, 7));
    CHECK(chain.config() == Configuration(std::vector<State>{-1, -1, 1, -1}));
    const std::string sites =
        "0033132113131100120231321203220003100023101022100302010310311030232220110131132300202320113321322133";
    const std::string accepted =
        "1111011111000000000000000000000000000000111100000000001011111111011111000000000000000000000000000000";
    for (std::size_t i = 0; i < 100; ++i) {
        const auto out = chain.step();
        REQUIRE(out.site == static_cast<SiteId>(sites[i] - '0'));
        REQUIRE(out.accepted == (accepted[i] == '1'));
    }
    CHECK(chain.objective() == -8.0);
}

TEST_CASE("running objective stays exact") {
    const auto g = geometry({6, 6, 6});
    const std::vector<std::shared_ptr<const CouplingModel>> models = {
        uniform(1.0),
        std::make_shared<const CouplingModel>(sample_couplings(*g, {Disorder::Kind::plus_minus, 1.0, 0, 0, 12}))};
    for (const auto& couplings : models) {
        for (Schedule schedule : {Schedule::random_site, Schedule::sequential_sweep}) {
            auto p = params(2.5, 1000000, 3);
            p.schedule = schedule;
            Chain chain(g, couplings, p);
            for (int block = 0; block < 10; ++block) {
                chain.advance(100000);
                REQUIRE(chain.objective() == total_objective(*g, chain.config(), *couplings));
            }
        }
    }
}

TEST_CASE("detailed balance of the acceptance rule") {
    const auto g = build_geometry({3, 3});
    const auto couplings = sample_couplings(g, {Disorder::Kind::interval, 0, -1.0, 1.0, 5});
    Rng rng(17);
    for (double beta : {0.2, 1.0, 3.0}) {
        for (int i = 0; i < 500; ++i) {
            const Configuration c(lt::random_states(g.site_count(), rng));
            const auto site = static_cast<SiteId>(rng.uniform_index(g.site_count()));
            Configuration d = c;
            d.flip(site);
            const double dw = flip_delta(g, c, couplings, site);
            REQUIRE(flip_delta(g, d, couplings, site) == -dw);
            const double forward = acceptance_probability(dw, beta) / 9.0;
            const double backward = acceptance_probability(-dw, beta) / 9.0;
            REQUIRE(forward / backward == doctest::Approx(std::exp(-beta * dw)).epsilon(1e-13));
            REQUIRE(forward > 0.0);
        }
    }
}

TEST_CASE("draw accounting") {
    SUBCASE("random_site: one index draw per step, one real draw per uphill move") {
        Chain chain(geometry({5, 5, 5}), uniform(1), params(3.0, 200000, 21));
        const auto reals0 = chain.rng().real_draws();
        const auto index0 = chain.rng().index_draws();
        std::uint64_t uphill = 0;
        for (int i = 0; i < 200000; ++i)
            uphill += chain.step().delta_w > 0.0;
        CHECK(chain.rng().index_draws() - index0 == 200000);
        CHECK(chain.rng().real_draws() - reals0 == uphill);
    }
    SUBCASE("sequential_sweep walks sites in row-major order without index draws") {
        auto p = params(3.0, 100, 21);
        p.schedule = Schedule::sequential_sweep;
        Chain chain(geometry({2, 3}), uniform(1), p);
        for (int i = 0; i < 30; ++i)
            REQUIRE(chain.step().site == static_cast<SiteId>(i % 6));
        CHECK(chain.rng().index_draws() == 0);
    }
}

TEST_CASE("run_chain schedules and determinism") {
    const auto g = geometry({4, 4});
    const auto p = params(2.0, 10007, 99);
    RunHooks hooks;
    hooks.measure_every = 1000;
    hooks.snapshot_every = 2500;
    const RunResult a = run_chain(g, uniform(1), p, hooks);
    const RunResult b = run_chain(g, uniform(1), p, hooks);
    CHECK(a.series == b.series);
    CHECK(a.chain.config() == b.chain.config());
    CHECK(a.chain.rng() == b.chain.rng());
    CHECK(a.chain.step_count() == 10007);
    // ceil(10007 / 1000) + 1 rows: 0, 1000, ..., 10000, 10007.
    REQUIRE(a.series.size() == 12);
    CHECK(a.series[0].step == 0);
    CHECK(a.series[10].step == 10000);
    CHECK(a.series[11].step == 10007);
    REQUIRE(a.snapshots.size() == 4);
    CHECK(a.snapshots[3].step == 10000);
    for (const auto& row : a.series)
        CHECK(row.m == mean_state_from_profit(row.u, 16));

    SUBCASE("stop and continue equals one shot") {
        RunHooks first = hooks;
        first.stop_at = 4000;
        RunResult half = run_chain(g, uniform(1), p, first);
        CHECK(half.chain.step_count() == 4000);
        RunResult rest = continue_chain(std::move(half.chain), std::move(half.series), hooks);
        CHECK(rest.series == a.series);
        CHECK(rest.chain.config() == a.chain.config());
        CHECK(rest.chain.objective() == a.chain.objective());
    }
    SUBCASE("callbacks fire on schedule") {
        RunHooks counted = hooks;
        int measures = 0, checkpoints = 0;
        counted.checkpoint_every = 5000;
        counted.on_measure = [&](const Chain& c, const Measurement& m) {
            ++measures;
            CHECK(c.step_count() == m.step);
        };
        counted.on_checkpoint = [&](const Chain& c, const TimeSeries& s) {
            ++checkpoints;
            CHECK(s.back().step == c.step_count());
        };
        run_chain(g, uniform(1), p, counted);
        CHECK(measures == 12);
        CHECK(checkpoints == 2);
    }
}

TEST_CASE("two-site ring reproduces the exact Boltzmann distribution") {
    const auto g = geometry({2});
    const auto couplings = uniform(1.0);
    const ExactDistribution exact = enumerate(*g, *couplings, 1.0);
    Chain chain(g, couplings, params(1.0, 10000000, 2024));
    chain.advance(10000);
    std::array<double, 4> counts{};
    const int samples = 10000000;
    for (int i = 0; i < samples; ++i) {
        chain.step();
        counts[index_of(chain.config())] += 1.0;
    }
    double tv = 0.0;
    for (std::size_t x = 0; x < 4; ++x)
        tv += std::abs(counts[x] / samples - exact[x]);
    tv *= 0.5;
    CHECK(tv <= 0.01);
}

TEST_CASE("ordered phase persists at T = 0.5") {
    RunHooks hooks;
    hooks.measure_every = 100000;
    const auto r = run_chain(geometry({16, 16, 16}), uniform(1), params(0.5, 10000000, 1, InitSpec::all_corrupt()), hooks);
    for (const auto& row : r.series)
        REQUIRE(row.m > 0.99);
}
