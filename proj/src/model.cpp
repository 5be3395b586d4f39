#include "latmc/model.hpp"

#include <cmath>
#include <string>

#include "latmc/errors.hpp"
#include "latmc/rng.hpp"

namespace latmc {

namespace {

void check_match(const LatticeGeometry& geometry, const Configuration& config) {
    if (config.size() != geometry.site_count())
        throw ContractViolation("configuration has " + std::to_string(config.size()) +
                                " sites, geometry has " + std::to_string(geometry.site_count()));
}

void check_site(const LatticeGeometry& geometry, SiteId site) {
    if (site >= geometry.site_count())
        throw InvalidSite("site " + std::to_string(site) + " out of range");
}

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

} // namespace

CouplingModel CouplingModel::uniform(double j, ObjectiveConvention convention) {
    if (!std::isfinite(j))
        throw InvalidParams("coupling J must be finite");
    CouplingModel model;
    model.uniform_ = true;
    model.j_ = j;
    model.convention_ = convention;
    return model;
}

CouplingModel CouplingModel::per_bond(const LatticeGeometry& geometry, std::vector<double> bonds,
                                      ObjectiveConvention convention) {
    const std::size_t d = geometry.dim();
    if (bonds.size() != geometry.site_count() * d)
        throw InvalidParams("per-bond couplings need " + std::to_string(geometry.site_count() * d) +
                            " values, got " + std::to_string(bonds.size()));
    for (double j : bonds)
        if (!std::isfinite(j))
            throw InvalidParams("bond couplings must be finite");

    CouplingModel model;
    model.uniform_ = false;
    model.j_ = 0.0;
    model.convention_ = convention;
    model.slot_j_.resize(geometry.site_count() * 2 * d);
    for (SiteId site = 0; site < geometry.site_count(); ++site) {
        for (std::size_t axis = 0; axis < d; ++axis) {
            // -axis slot uses the bond owned by the neighbor below.
            const SiteId below = geometry.neighbor(site, 2 * axis);
            model.slot_j_[site * 2 * d + 2 * axis] = bonds[below * d + axis];
            model.slot_j_[site * 2 * d + 2 * axis + 1] = bonds[site * d + axis];
        }
    }
    model.bonds_ = std::move(bonds);
    return model;
}

CouplingModel sample_couplings(const LatticeGeometry& geometry, const Disorder& disorder,
                               ObjectiveConvention convention) {
    if (disorder.kind == Disorder::Kind::interval && !(disorder.lo <= disorder.hi))
        throw InvalidParams("disorder interval needs lo <= hi");
    Rng rng(disorder.seed);
    std::vector<double> bonds(geometry.site_count() * geometry.dim());
    for (double& j : bonds) {
        const double u = rng.uniform_real();
        if (disorder.kind == Disorder::Kind::plus_minus)
            j = u < 0.5 ? disorder.j : -disorder.j;
        else
            j = disorder.lo + (disorder.hi - disorder.lo) * u;
    }
    return CouplingModel::per_bond(geometry, std::move(bonds), convention);
}

double local_term(const LatticeGeometry& geometry, const Configuration& config,
                  const CouplingModel& couplings, SiteId site) {
    check_match(geometry, config);
    check_site(geometry, site);
    const SiteId* row = geometry.neighbor_row(site);
    double sum = 0.0;
    for (std::size_t slot = 0; slot < geometry.slots_per_site(); ++slot)
        sum += couplings.slot_coupling(geometry, site, slot) * config[row[slot]];
    return -config[site] * sum;
}

double total_objective(const LatticeGeometry& geometry, const Configuration& config,
                       const CouplingModel& couplings) {
    check_match(geometry, config);
    const std::size_t d = geometry.dim();
    if (couplings.is_uniform()) {
        long long aligned = 0;
        for (SiteId site = 0; site < geometry.site_count(); ++site)
            for (std::size_t axis = 0; axis < d; ++axis)
                aligned += config[site] * config[geometry.forward(site, axis)];
        return -couplings.uniform_j() * couplings.convention_factor() * static_cast<double>(aligned);
    }
    CompensatedSum sum;
    for (SiteId site = 0; site < geometry.site_count(); ++site)
        for (std::size_t axis = 0; axis < d; ++axis)
            sum.add(couplings.bond(geometry, site, axis) * config[site] *
                    config[geometry.forward(site, axis)]);
    return -couplings.convention_factor() * sum.value();
}

double flip_delta(const LatticeGeometry& geometry, const Configuration& config,
                  const CouplingModel& couplings, SiteId site) {
    check_match(geometry, config);
    check_site(geometry, site);
    return detail::flip_delta_unchecked(geometry, config.states().data(), couplings, site);
}

double objective_bound(const LatticeGeometry& geometry, const CouplingModel& couplings) {
    const double bond_count = static_cast<double>(geometry.site_count() * geometry.dim());
    if (couplings.is_uniform())
        return std::abs(couplings.uniform_j()) * bond_count * couplings.convention_factor();
    CompensatedSum sum;
    for (double j : couplings.bonds())
        sum.add(std::abs(j));
    return sum.value() * couplings.convention_factor();
}

} // namespace latmc
