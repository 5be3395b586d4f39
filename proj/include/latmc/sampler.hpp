#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "latmc/lattice.hpp"
#include "latmc/model.hpp"
#include "latmc/rng.hpp"

namespace latmc {

enum class Schedule { random_site, sequential_sweep };

struct ChainParams {
    double temperature = 1.0;
    std::uint64_t steps = 1;  // elementary trial moves
    Schedule schedule = Schedule::random_site;
    std::uint64_t seed = 0;
    InitSpec init = InitSpec::random(0.5);

    double beta() const noexcept { return 1.0 / temperature; }

    // Throws InvalidParams.
    void validate() const;
};

// 1 if delta_w <= 0, else exp(-beta * delta_w).
inline double acceptance_probability(double delta_w, double beta) noexcept {
    return delta_w <= 0.0 ? 1.0 : std::exp(-beta * delta_w);
}

struct StepOutcome {
    SiteId site;
    double delta_w;
    bool accepted;
};

/**
 * One Metropolis Markov chain: configuration, running objective, RNG, and
 * step counter. The running objective is updated by the accepted deltas only
 * and is never recomputed.
 *
 * Per step: choose a site (one index draw for random_site, the next site in
 * row-major order for sequential_sweep), compute the flip delta, and accept
 * outright if it is <= 0; otherwise draw one uniform real xi and accept iff
 * xi <= exp(-beta * delta).
 */
class Chain {
public:
    using GeometryPtr = std::shared_ptr<const LatticeGeometry>;
    using CouplingsPtr = std::shared_ptr<const CouplingModel>;

    // Fresh chain: the initial configuration is drawn from Rng(params.seed)
    // and the same stream then drives the dynamics.
    Chain(GeometryPtr geometry, CouplingsPtr couplings, ChainParams params);

    // Chain with an explicit initial configuration and RNG, e.g. restored
    // from a checkpoint. `objective` is trusted as the running W.
    Chain(GeometryPtr geometry, CouplingsPtr couplings, ChainParams params, Configuration config,
          Rng rng, std::uint64_t step_count, double objective, SiteId cursor);

    StepOutcome step() noexcept {
        SiteId site;
        if (params_.schedule == Schedule::random_site) {
            site = static_cast<SiteId>(rng_.uniform_index(site_count_));
        } else {
            site = cursor_;
            cursor_ = cursor_ + 1 == site_count_ ? 0 : cursor_ + 1;
        }
        const State* states = config_.states().data();
        double delta;
        double accept_p;
        if (uniform_) {
            const int aligned = detail::aligned_neighbor_sum(*geometry_, states, site);
            delta = delta_scale_ * aligned;
            accept_p = accept_table_[static_cast<std::size_t>(aligned + max_aligned_)];
        } else {
            delta = detail::flip_delta_unchecked(*geometry_, states, *couplings_, site);
            accept_p = acceptance_probability(delta, beta_);
        }
        bool accepted = true;
        if (delta > 0.0)
            accepted = rng_.uniform_real() <= accept_p;
        if (accepted) {
            config_.flip(site);
            objective_ += delta;
        }
        ++step_count_;
        return {site, delta, accepted};
    }

    // Runs n steps without reporting outcomes.
    void advance(std::uint64_t n) noexcept {
        for (std::uint64_t i = 0; i < n; ++i)
            step();
    }

    const LatticeGeometry& geometry() const noexcept { return *geometry_; }
    const CouplingModel& couplings() const noexcept { return *couplings_; }
    const GeometryPtr& geometry_ptr() const noexcept { return geometry_; }
    const CouplingsPtr& couplings_ptr() const noexcept { return couplings_; }
    const ChainParams& params() const noexcept { return params_; }
    const Configuration& config() const noexcept { return config_; }
    const Rng& rng() const noexcept { return rng_; }
    std::uint64_t step_count() const noexcept { return step_count_; }
    double objective() const noexcept { return objective_; }
    // Next site of the sequential schedule.
    SiteId cursor() const noexcept { return cursor_; }

private:
    void prepare();

    GeometryPtr geometry_;
    CouplingsPtr couplings_;
    ChainParams params_;
    Configuration config_;
    Rng rng_;
    std::uint64_t step_count_ = 0;
    double objective_ = 0.0;
    SiteId cursor_ = 0;

    std::uint64_t site_count_ = 0;
    double beta_ = 1.0;
    bool uniform_ = true;
    double delta_scale_ = 0.0;
    int max_aligned_ = 0;
    std::vector<double> accept_table_;
};

} // namespace latmc
