#include "latmc/run.hpp"

#include <algorithm>

#include "latmc/errors.hpp"

namespace latmc {

RunResult run_chain(Chain::GeometryPtr geometry, Chain::CouplingsPtr couplings,
                    const ChainParams& params, const RunHooks& hooks) {
    params.validate();
    return continue_chain(Chain(std::move(geometry), std::move(couplings), params), TimeSeries{},
                          hooks);
}

RunResult continue_chain(Chain chain, TimeSeries series, const RunHooks& hooks) {
    const std::uint64_t budget = chain.params().steps;
    if (chain.step_count() > budget)
        throw InvalidParams("chain is already past its step budget");
    const std::uint64_t end = hooks.stop_at != 0 ? std::min(hooks.stop_at, budget) : budget;

    std::vector<Snapshot> snapshots;

    const auto measure = [&] {
        if (hooks.measure_every == 0)
            return;
        const std::uint64_t s = chain.step_count();
        if (s % hooks.measure_every != 0 && s != budget)
            return;
        if (!series.empty() && series.back().step >= s)
            return;
        const Measurement& m = record(series, chain);
        if (hooks.on_measure)
            hooks.on_measure(chain, m);
    };

    const auto next_multiple = [](std::uint64_t s, std::uint64_t every) {
        return (s / every + 1) * every;
    };

    measure();
    while (chain.step_count() < end) {
        const std::uint64_t s = chain.step_count();
        std::uint64_t next = end;
        for (std::uint64_t every : {hooks.measure_every, hooks.snapshot_every, hooks.checkpoint_every})
            if (every != 0)
                next = std::min(next, next_multiple(s, every));
        chain.advance(next - s);

        measure();
        if (hooks.snapshot_every != 0 && next % hooks.snapshot_every == 0) {
            if (hooks.keep_snapshots)
                snapshots.push_back({next, chain.config()});
            if (hooks.on_snapshot)
                hooks.on_snapshot(chain);
        }
        if (hooks.checkpoint_every != 0 && next % hooks.checkpoint_every == 0 && hooks.on_checkpoint)
            hooks.on_checkpoint(chain, series);
    }
    return {std::move(chain), std::move(series), std::move(snapshots)};
}

} // namespace latmc
