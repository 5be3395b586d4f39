#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "latmc/observables.hpp"
#include "latmc/sampler.hpp"

namespace latmc {

struct Snapshot {
    std::uint64_t step = 0;
    Configuration config;
};

/**
 * Event schedule for run_chain. A zero interval disables that event.
 *
 * Measurements are taken at step 0, at every multiple of measure_every, and
 * at the final step. Snapshots and checkpoint callbacks fire at positive
 * multiples of their intervals. Callbacks see the chain after the step.
 */
struct RunHooks {
    std::uint64_t measure_every = 0;
    std::uint64_t snapshot_every = 0;
    std::uint64_t checkpoint_every = 0;
    // Stop once this step count is reached (0 = run the whole budget).
    std::uint64_t stop_at = 0;
    bool keep_snapshots = true;

    std::function<void(const Chain&, const Measurement&)> on_measure;
    std::function<void(const Chain&)> on_snapshot;
    std::function<void(const Chain&, const TimeSeries&)> on_checkpoint;
};

struct RunResult {
    Chain chain;
    TimeSeries series;
    std::vector<Snapshot> snapshots;
};

// Builds a fresh chain and runs params.steps steps. Throws InvalidParams.
RunResult run_chain(Chain::GeometryPtr geometry, Chain::CouplingsPtr couplings,
                    const ChainParams& params, const RunHooks& hooks);

// Continues an existing chain (fresh or restored) up to params.steps.
// `series` holds the measurements recorded so far.
RunResult continue_chain(Chain chain, TimeSeries series, const RunHooks& hooks);

} // namespace latmc
