#include "latmc/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "latmc/errors.hpp"
#include "latmc/observables.hpp"
#include "latmc/sampler.hpp"

namespace latmc {

namespace {

void check_enumerable(const LatticeGeometry& geometry, std::size_t limit) {
    if (geometry.site_count() > limit)
        throw TooLarge("exact enumeration limited to " + std::to_string(limit) + " sites, lattice has " +
                       std::to_string(geometry.site_count()));
}

// Visits every configuration in Gray-code order, flipping one site between
// visits, and calls fn(index, config).
template <class Fn>
void for_each_configuration(std::size_t site_count, Fn&& fn) {
    Configuration config(site_count, kHonest);
    const std::uint64_t n = std::uint64_t{1} << site_count;
    std::uint64_t gray = 0;
    fn(gray, config);
    for (std::uint64_t i = 1; i < n; ++i) {
        const auto bit = static_cast<SiteId>(std::countr_zero(i));
        config.flip(bit);
        gray ^= std::uint64_t{1} << bit;
        fn(gray, config);
    }
}

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

Configuration configuration_from_index(std::uint64_t index, std::size_t site_count) {
    if (site_count > 63)
        throw TooLarge("configuration index supports at most 63 sites");
    std::vector<State> states(site_count);
    for (std::size_t i = 0; i < site_count; ++i)
        states[i] = (index >> i) & 1U ? kCorrupt : kHonest;
    return Configuration(std::move(states));
}

std::uint64_t index_of(const Configuration& config) {
    if (config.size() > 63)
        throw TooLarge("configuration index supports at most 63 sites");
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < config.size(); ++i)
        if (config[static_cast<SiteId>(i)] > 0)
            index |= std::uint64_t{1} << i;
    return index;
}

ExactDistribution enumerate(const LatticeGeometry& geometry, const CouplingModel& couplings,
                            double beta) {
    check_enumerable(geometry, kMaxEnumerationSites);
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw InvalidParams("beta must be finite and non-negative");
    const std::size_t m = geometry.site_count();
    std::vector<double> weights(std::size_t{1} << m);
    double w_min = std::numeric_limits<double>::infinity();
    for_each_configuration(m, [&](std::uint64_t index, const Configuration& config) {
        const double w = total_objective(geometry, config, couplings);
        weights[index] = w;
        w_min = std::min(w_min, w);
    });
    CompensatedSum norm;
    for (double& w : weights) {
        w = std::exp(-beta * (w - w_min));
        norm.add(w);
    }
    const double z = norm.value();
    for (double& w : weights)
        w /= z;
    return ExactDistribution(geometry, couplings, beta, std::move(weights));
}

std::map<double, double> observable_marginal(const ExactDistribution& dist, Observable observable) {
    const LatticeGeometry& geometry = dist.geometry();
    const std::size_t m = geometry.site_count();
    std::map<double, CompensatedSum> sums;
    if (observable == Observable::W) {
        for_each_configuration(m, [&](std::uint64_t index, const Configuration& config) {
            sums[total_objective(geometry, config, dist.couplings())].add(dist[index]);
        });
    } else {
        const std::uint64_t n = std::uint64_t{1} << m;
        for (std::uint64_t index = 0; index < n; ++index) {
            const auto u = static_cast<std::uint64_t>(std::popcount(index));
            const double key =
                observable == Observable::U ? static_cast<double>(u) : mean_state_from_profit(u, m);
            sums[key].add(dist[index]);
        }
    }
    std::map<double, double> table;
    for (const auto& [value, sum] : sums)
        table.emplace(value, sum.value());
    return table;
}

double exact_expectation(const ExactDistribution& dist, Observable observable) {
    CompensatedSum sum;
    for (const auto& [value, p] : observable_marginal(dist, observable))
        sum.add(value * p);
    return sum.value();
}

namespace {

void add_site_moves(const LatticeGeometry& geometry, const CouplingModel& couplings, double beta,
                    SiteId site, double proposal, std::vector<double>& kernel) {
    const std::size_t m = geometry.site_count();
    const std::uint64_t n = std::uint64_t{1} << m;
    for (std::uint64_t from = 0; from < n; ++from) {
        const Configuration config = configuration_from_index(from, m);
        const double accept = acceptance_probability(flip_delta(geometry, config, couplings, site), beta);
        const std::uint64_t to = from ^ (std::uint64_t{1} << site);
        kernel[from * n + to] += proposal * accept;
        kernel[from * n + from] += proposal * (1.0 - accept);
    }
}

} // namespace

std::vector<double> metropolis_kernel(const LatticeGeometry& geometry,
                                      const CouplingModel& couplings, double beta) {
    check_enumerable(geometry, kMaxKernelSites);
    const std::size_t m = geometry.site_count();
    const std::size_t n = std::size_t{1} << m;
    std::vector<double> kernel(n * n, 0.0);
    for (SiteId site = 0; site < m; ++site)
        add_site_moves(geometry, couplings, beta, site, 1.0 / static_cast<double>(m), kernel);
    return kernel;
}

std::vector<double> site_kernel(const LatticeGeometry& geometry, const CouplingModel& couplings,
                                double beta, SiteId site) {
    check_enumerable(geometry, kMaxKernelSites);
    if (site >= geometry.site_count())
        throw InvalidSite("site " + std::to_string(site) + " out of range");
    const std::size_t n = std::size_t{1} << geometry.site_count();
    std::vector<double> kernel(n * n, 0.0);
    add_site_moves(geometry, couplings, beta, site, 1.0, kernel);
    return kernel;
}

std::vector<double> apply_kernel(const std::vector<double>& kernel,
                                 const std::vector<double>& distribution) {
    const std::size_t n = distribution.size();
    if (kernel.size() != n * n)
        throw ContractViolation("kernel and distribution sizes disagree");
    std::vector<double> out(n, 0.0);
    for (std::size_t from = 0; from < n; ++from) {
        const double p = distribution[from];
        if (p == 0.0)
            continue;
        const double* row = kernel.data() + from * n;
        for (std::size_t to = 0; to < n; ++to)
            out[to] += p * row[to];
    }
    return out;
}

} // namespace latmc
