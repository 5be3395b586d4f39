#include "latmc/sampler.hpp"

#include <cmath>
#include <string>

#include "latmc/errors.hpp"

namespace latmc {

void ChainParams::validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw InvalidParams("temperature must be positive and finite");
    if (steps == 0)
        throw InvalidParams("step budget must be at least 1");
    if (init.kind == InitSpec::Kind::random && !(init.p_corrupt >= 0.0 && init.p_corrupt <= 1.0))
        throw InvalidParams("p_corrupt must lie in [0, 1]");
}

Chain::Chain(GeometryPtr geometry, CouplingsPtr couplings, ChainParams params)
    : geometry_(std::move(geometry)), couplings_(std::move(couplings)), params_(params),
      rng_(params.seed) {
    params_.validate();
    config_ = init_configuration(*geometry_, params_.init, rng_);
    objective_ = total_objective(*geometry_, config_, *couplings_);
    prepare();
}

Chain::Chain(GeometryPtr geometry, CouplingsPtr couplings, ChainParams params, Configuration config,
             Rng rng, std::uint64_t step_count, double objective, SiteId cursor)
    : geometry_(std::move(geometry)), couplings_(std::move(couplings)), params_(params),
      config_(std::move(config)), rng_(std::move(rng)), step_count_(step_count),
      objective_(objective), cursor_(cursor) {
    params_.validate();
    if (config_.size() != geometry_->site_count())
        throw ContractViolation("configuration does not match geometry");
    if (cursor_ >= geometry_->site_count())
        throw ContractViolation("schedule cursor out of range");
    prepare();
}

void Chain::prepare() {
    if (!geometry_ || !couplings_)
        throw ContractViolation("chain needs a geometry and couplings");
    if (!couplings_->is_uniform() &&
        couplings_->bonds().size() != geometry_->site_count() * geometry_->dim())
        throw ContractViolation("per-bond couplings do not match geometry");
    site_count_ = geometry_->site_count();
    beta_ = params_.beta();
    uniform_ = couplings_->is_uniform();
    if (uniform_) {
        max_aligned_ = static_cast<int>(geometry_->slots_per_site());
        delta_scale_ = 2.0 * couplings_->convention_factor() * couplings_->uniform_j();
        accept_table_.resize(2 * static_cast<std::size_t>(max_aligned_) + 1);
        for (int a = -max_aligned_; a <= max_aligned_; ++a)
            accept_table_[static_cast<std::size_t>(a + max_aligned_)] =
                acceptance_probability(delta_scale_ * a, beta_);
    }
}

} // namespace latmc
