#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latmc/lattice.hpp"

namespace latmc {

// bond_once: W sums -J_ij c_i c_j over unordered bonds.
// literal:   W sums the per-site terms phi_i, counting every bond twice.
enum class ObjectiveConvention { bond_once, literal };

/**
 * Interaction strengths between neighboring agents.
 *
 * Either one constant J for every bond, or one value per bond. Bonds are
 * indexed site * d + axis and join a site to its +axis neighbor, so a
 * periodic lattice has exactly d*M of them (a length-2 axis yields two
 * distinct bonds between the same pair of sites, one per slot pair).
 */
class CouplingModel {
public:
    static CouplingModel uniform(double j,
                                 ObjectiveConvention convention = ObjectiveConvention::bond_once);
    static CouplingModel per_bond(const LatticeGeometry& geometry, std::vector<double> bonds,
                                  ObjectiveConvention convention = ObjectiveConvention::bond_once);

    bool is_uniform() const noexcept { return uniform_; }
    double uniform_j() const noexcept { return j_; }
    ObjectiveConvention convention() const noexcept { return convention_; }
    // 1 for bond_once, 2 for literal.
    double convention_factor() const noexcept {
        return convention_ == ObjectiveConvention::literal ? 2.0 : 1.0;
    }

    // Coupling on the bond behind neighbor slot `slot` of `site`.
    double slot_coupling(const LatticeGeometry& geometry, SiteId site, std::size_t slot) const noexcept {
        if (uniform_)
            return j_;
        return slot_j_[static_cast<std::size_t>(site) * geometry.slots_per_site() + slot];
    }
    // Coupling between `site` and its +axis neighbor.
    double bond(const LatticeGeometry& geometry, SiteId site, std::size_t axis) const noexcept {
        if (uniform_)
            return j_;
        return bonds_[static_cast<std::size_t>(site) * geometry.dim() + axis];
    }

    // Empty for the uniform variant.
    const std::vector<double>& bonds() const noexcept { return bonds_; }

private:
    bool uniform_ = true;
    double j_ = 1.0;
    ObjectiveConvention convention_ = ObjectiveConvention::bond_once;
    std::vector<double> bonds_;
    std::vector<double> slot_j_;
};

/// Quenched disorder for the spin-glass variant, sampled once per run.
struct Disorder {
    enum class Kind { plus_minus, interval };
    Kind kind = Kind::plus_minus;
    double j = 1.0;    // plus_minus: each bond is +j or -j with probability 1/2
    double lo = -1.0;  // interval: each bond uniform on [lo, hi)
    double hi = 1.0;
    std::uint64_t seed = 0;
};

CouplingModel sample_couplings(const LatticeGeometry& geometry, const Disorder& disorder,
                               ObjectiveConvention convention = ObjectiveConvention::bond_once);

// phi_i = -sum over the 2d slots j of J_ij c_i c_j. Independent of the
// objective convention.
double local_term(const LatticeGeometry& geometry, const Configuration& config,
                  const CouplingModel& couplings, SiteId site);

double total_objective(const LatticeGeometry& geometry, const Configuration& config,
                       const CouplingModel& couplings);

// W(config with site flipped) - W(config).
double flip_delta(const LatticeGeometry& geometry, const Configuration& config,
                  const CouplingModel& couplings, SiteId site);

namespace detail {

// c_k times the sum of neighbor states of site k.
inline int aligned_neighbor_sum(const LatticeGeometry& geometry, const State* states,
                                SiteId site) noexcept {
    const SiteId* row = geometry.neighbor_row(site);
    int sum = 0;
    for (std::size_t slot = 0; slot < geometry.slots_per_site(); ++slot)
        sum += states[row[slot]];
    return sum * states[site];
}

// Shared by flip_delta and the sampler so both produce identical bits.
inline double flip_delta_unchecked(const LatticeGeometry& geometry, const State* states,
                                   const CouplingModel& couplings, SiteId site) noexcept {
    if (couplings.is_uniform()) {
        const double scale = 2.0 * couplings.convention_factor() * couplings.uniform_j();
        return scale * aligned_neighbor_sum(geometry, states, site);
    }
    const SiteId* row = geometry.neighbor_row(site);
    double field = 0.0;
    for (std::size_t slot = 0; slot < geometry.slots_per_site(); ++slot)
        field += couplings.slot_coupling(geometry, site, slot) * states[row[slot]];
    return 2.0 * couplings.convention_factor() * states[site] * field;
}

} // namespace detail

// Sum of |J| over all bonds, scaled by the convention factor; bounds |W|.
double objective_bound(const LatticeGeometry& geometry, const CouplingModel& couplings);

} // namespace latmc
