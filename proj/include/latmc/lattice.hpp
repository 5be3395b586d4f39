#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace latmc {

class Rng;

using SiteId = std::uint32_t;

// Agent state. +1 = takes part in corruption, -1 = does not.
using State = std::int8_t;
inline constexpr State kCorrupt = 1;
inline constexpr State kHonest = -1;

using Coords = std::vector<std::size_t>;

/**
 * Periodic Cartesian lattice in 1, 2 or 3 dimensions.
 *
 * Sites are numbered row-major with the last axis fastest. Every site owns
 * 2d neighbor slots in the fixed order (-x, +x, -y, +y, -z, +z), where x is
 * axis 0. On length-2 axes both slots of an axis point at the same site; the
 * duplicate is kept so each site always has exactly 2d slots.
 *
 * Immutable after construction.
 */
class LatticeGeometry {
public:
    static constexpr std::size_t kMaxDim = 3;

    explicit LatticeGeometry(std::vector<std::size_t> lengths);

    std::size_t dim() const noexcept { return lengths_.size(); }
    std::size_t site_count() const noexcept { return site_count_; }
    std::size_t slots_per_site() const noexcept { return 2 * lengths_.size(); }
    std::span<const std::size_t> lengths() const noexcept { return lengths_; }
    std::size_t length(std::size_t axis) const { return lengths_.at(axis); }
    std::size_t stride(std::size_t axis) const { return strides_.at(axis); }

    // Throws InvalidSite for an out-of-range index.
    std::span<const SiteId> neighbors(SiteId site) const;

    // Unchecked slot lookup for hot loops.
    SiteId neighbor(SiteId site, std::size_t slot) const noexcept {
        return table_[static_cast<std::size_t>(site) * slots_per_site() + slot];
    }
    const SiteId* neighbor_row(SiteId site) const noexcept {
        return table_.data() + static_cast<std::size_t>(site) * slots_per_site();
    }

    // Neighbor of `site` one step along +axis (slot 2*axis+1).
    SiteId forward(SiteId site, std::size_t axis) const noexcept {
        return neighbor(site, 2 * axis + 1);
    }

    Coords decode(SiteId site) const;
    SiteId encode(const Coords& coords) const;

    // Site reached by moving `offset` positions along `axis`, wrapping.
    SiteId shift(SiteId site, std::size_t axis, std::ptrdiff_t offset) const;

    bool operator==(const LatticeGeometry& other) const noexcept {
        return lengths_ == other.lengths_;
    }

private:
    std::vector<std::size_t> lengths_;
    std::vector<std::size_t> strides_;
    std::size_t site_count_ = 0;
    std::vector<SiteId> table_;
};

LatticeGeometry build_geometry(std::vector<std::size_t> lengths);

/// Per-site agent states of one lattice, each exactly +1 or -1.
class Configuration {
public:
    Configuration() = default;
    Configuration(std::size_t site_count, State fill);
    // Throws ContractViolation if any entry is not +1/-1.
    explicit Configuration(std::vector<State> states);

    std::size_t size() const noexcept { return states_.size(); }
    State operator[](SiteId site) const noexcept { return states_[site]; }
    State at(SiteId site) const;
    void set(SiteId site, State value);
    void flip(SiteId site) noexcept { states_[site] = static_cast<State>(-states_[site]); }
    std::span<const State> states() const noexcept { return states_; }

    bool operator==(const Configuration&) const = default;

private:
    std::vector<State> states_;
};

struct InitSpec {
    enum class Kind { all_corrupt, all_honest, random };
    Kind kind = Kind::random;
    double p_corrupt = 0.5;

    static InitSpec all_corrupt() { return {Kind::all_corrupt, 1.0}; }
    static InitSpec all_honest() { return {Kind::all_honest, 0.0}; }
    static InitSpec random(double p) { return {Kind::random, p}; }
};

// Random mode consumes exactly site_count uniform reals, in site order.
Configuration init_configuration(const LatticeGeometry& geometry, const InitSpec& init, Rng& rng);

// Configuration of the lattice translated by `offset` (one entry per axis).
Configuration translate(const LatticeGeometry& geometry, const Configuration& config,
                        const std::vector<std::ptrdiff_t>& offset);

} // namespace latmc
