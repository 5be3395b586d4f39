#include "latmc/lattice.hpp"

#include <limits>
#include <string>

#include "latmc/errors.hpp"
#include "latmc/rng.hpp"

namespace latmc {

LatticeGeometry::LatticeGeometry(std::vector<std::size_t> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty() || lengths_.size() > kMaxDim)
        throw InvalidGeometry("lattice needs 1 to 3 axes, got " + std::to_string(lengths_.size()));
    std::size_t count = 1;
    for (std::size_t len : lengths_) {
        if (len < 2)
            throw InvalidGeometry("axis length must be at least 2, got " + std::to_string(len));
        if (count > std::numeric_limits<SiteId>::max() / len)
            throw InvalidGeometry("lattice has too many sites");
        count *= len;
    }
    site_count_ = count;

    const std::size_t d = lengths_.size();
    strides_.assign(d, 1);
    for (std::size_t axis = d - 1; axis-- > 0;)
        strides_[axis] = strides_[axis + 1] * lengths_[axis + 1];

    table_.resize(site_count_ * 2 * d);
    for (std::size_t site = 0; site < site_count_; ++site) {
        for (std::size_t axis = 0; axis < d; ++axis) {
            const std::size_t len = lengths_[axis];
            const std::size_t stride = strides_[axis];
            const std::size_t coord = (site / stride) % len;
            const std::size_t base = site - coord * stride;
            const std::size_t down = coord == 0 ? len - 1 : coord - 1;
            const std::size_t up = coord + 1 == len ? 0 : coord + 1;
            table_[site * 2 * d + 2 * axis] = static_cast<SiteId>(base + down * stride);
            table_[site * 2 * d + 2 * axis + 1] = static_cast<SiteId>(base + up * stride);
        }
    }
}

std::span<const SiteId> LatticeGeometry::neighbors(SiteId site) const {
    if (site >= site_count_)
        throw InvalidSite("site " + std::to_string(site) + " outside [0, " +
                          std::to_string(site_count_) + ")");
    return {neighbor_row(site), slots_per_site()};
}

Coords LatticeGeometry::decode(SiteId site) const {
    if (site >= site_count_)
        throw InvalidSite("site " + std::to_string(site) + " out of range");
    Coords coords(dim());
    for (std::size_t axis = 0; axis < dim(); ++axis)
        coords[axis] = (site / strides_[axis]) % lengths_[axis];
    return coords;
}

SiteId LatticeGeometry::encode(const Coords& coords) const {
    if (coords.size() != dim())
        throw InvalidSite("coordinate tuple has wrong dimension");
    std::size_t site = 0;
    for (std::size_t axis = 0; axis < dim(); ++axis) {
        if (coords[axis] >= lengths_[axis])
            throw InvalidSite("coordinate out of range on axis " + std::to_string(axis));
        site += coords[axis] * strides_[axis];
    }
    return static_cast<SiteId>(site);
}

SiteId LatticeGeometry::shift(SiteId site, std::size_t axis, std::ptrdiff_t offset) const {
    if (site >= site_count_)
        throw InvalidSite("site " + std::to_string(site) + " out of range");
    const auto len = static_cast<std::ptrdiff_t>(lengths_.at(axis));
    const auto coord = static_cast<std::ptrdiff_t>((site / strides_[axis]) % lengths_[axis]);
    const std::ptrdiff_t moved = ((coord + offset) % len + len) % len;
    return static_cast<SiteId>(static_cast<std::ptrdiff_t>(site) +
                               (moved - coord) * static_cast<std::ptrdiff_t>(strides_[axis]));
}

LatticeGeometry build_geometry(std::vector<std::size_t> lengths) {
    return LatticeGeometry(std::move(lengths));
}

namespace {

void check_state(State s) {
    if (s != kCorrupt && s != kHonest)
        throw ContractViolation("agent state must be +1 or -1, got " + std::to_string(int{s}));
}

} // namespace

Configuration::Configuration(std::size_t site_count, State fill) {
    check_state(fill);
    states_.assign(site_count, fill);
}

Configuration::Configuration(std::vector<State> states) : states_(std::move(states)) {
    for (State s : states_)
        check_state(s);
}

State Configuration::at(SiteId site) const {
    if (site >= states_.size())
        throw InvalidSite("site " + std::to_string(site) + " out of range");
    return states_[site];
}

void Configuration::set(SiteId site, State value) {
    check_state(value);
    if (site >= states_.size())
        throw InvalidSite("site " + std::to_string(site) + " out of range");
    states_[site] = value;
}

Configuration init_configuration(const LatticeGeometry& geometry, const InitSpec& init, Rng& rng) {
    switch (init.kind) {
    case InitSpec::Kind::all_corrupt:
        return Configuration(geometry.site_count(), kCorrupt);
    case InitSpec::Kind::all_honest:
        return Configuration(geometry.site_count(), kHonest);
    case InitSpec::Kind::random:
        break;
    }
    if (!(init.p_corrupt >= 0.0 && init.p_corrupt <= 1.0))
        throw InvalidParams("p_corrupt must lie in [0, 1]");
    std::vector<State> states(geometry.site_count());
    for (auto& s : states)
        s = rng.uniform_real() < init.p_corrupt ? kCorrupt : kHonest;
    return Configuration(std::move(states));
}

Configuration translate(const LatticeGeometry& geometry, const Configuration& config,
                        const std::vector<std::ptrdiff_t>& offset) {
    if (config.size() != geometry.site_count() || offset.size() != geometry.dim())
        throw ContractViolation("translate: configuration or offset does not match geometry");
    std::vector<State> out(config.size());
    for (SiteId site = 0; site < config.size(); ++site) {
        SiteId target = site;
        for (std::size_t axis = 0; axis < geometry.dim(); ++axis)
            target = geometry.shift(target, axis, offset[axis]);
        out[target] = config[site];
    }
    return Configuration(std::move(out));
}

} // namespace latmc
