#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "latmc/lattice.hpp"
#include "latmc/model.hpp"

namespace latmc {

// Largest lattice enumerate() accepts: 2^24 configurations.
inline constexpr std::size_t kMaxEnumerationSites = 24;

// Configuration index x maps bit i to site i: set = corrupt.
Configuration configuration_from_index(std::uint64_t index, std::size_t site_count);
std::uint64_t index_of(const Configuration& config);

enum class Observable { U, W, m };

/// Boltzmann weights exp(-beta W) over all 2^M configurations, normalized.
class ExactDistribution {
public:
    ExactDistribution(LatticeGeometry geometry, CouplingModel couplings, double beta,
                      std::vector<double> probabilities)
        : geometry_(std::move(geometry)), couplings_(std::move(couplings)), beta_(beta),
          probabilities_(std::move(probabilities)) {}

    const LatticeGeometry& geometry() const noexcept { return geometry_; }
    const CouplingModel& couplings() const noexcept { return couplings_; }
    double beta() const noexcept { return beta_; }
    const std::vector<double>& probabilities() const noexcept { return probabilities_; }
    double operator[](std::uint64_t index) const { return probabilities_[index]; }

private:
    LatticeGeometry geometry_;
    CouplingModel couplings_;
    double beta_;
    std::vector<double> probabilities_;
};

// Throws TooLarge when M exceeds kMaxEnumerationSites, InvalidParams for
// negative beta.
ExactDistribution enumerate(const LatticeGeometry& geometry, const CouplingModel& couplings,
                            double beta);

// Exact pushforward of the distribution onto observable values.
std::map<double, double> observable_marginal(const ExactDistribution& dist, Observable observable);

double exact_expectation(const ExactDistribution& dist, Observable observable);

// Dense row-stochastic one-step Metropolis kernel, entry [from * N + to],
// N = 2^M. random_site proposes each site with probability 1/M; a
// sequential kernel for one fixed site is available via site_kernel.
// Throws TooLarge for M above kMaxKernelSites.
inline constexpr std::size_t kMaxKernelSites = 10;

std::vector<double> metropolis_kernel(const LatticeGeometry& geometry,
                                      const CouplingModel& couplings, double beta);
std::vector<double> site_kernel(const LatticeGeometry& geometry, const CouplingModel& couplings,
                                double beta, SiteId site);

// Row vector times kernel.
std::vector<double> apply_kernel(const std::vector<double>& kernel,
                                 const std::vector<double>& distribution);

} // namespace latmc
