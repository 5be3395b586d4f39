#include "latmc/observables.hpp"

#include <string>

#include "latmc/errors.hpp"
#include "latmc/sampler.hpp"

namespace latmc {

void TimeSeries::append(const Measurement& m) {
    if (!rows_.empty() && m.step <= rows_.back().step)
        throw ContractViolation("measurement at step " + std::to_string(m.step) +
                                " does not follow step " + std::to_string(rows_.back().step));
    rows_.push_back(m);
}

std::uint64_t total_profit(const Configuration& config) {
    std::uint64_t u = 0;
    for (State s : config.states())
        u += s > 0 ? 1 : 0;
    return u;
}

double mean_state(const Configuration& config) {
    long long sum = 0;
    for (State s : config.states())
        sum += s;
    return static_cast<double>(sum) / static_cast<double>(config.size());
}

double mean_state_from_profit(std::uint64_t u, std::size_t site_count) {
    const auto m = static_cast<double>(site_count);
    return (2.0 * static_cast<double>(u) - m) / m;
}

const Measurement& record(TimeSeries& series, const Chain& chain) {
    const std::uint64_t u = total_profit(chain.config());
    series.append({chain.step_count(), chain.objective(), u,
                   mean_state_from_profit(u, chain.config().size())});
    return series.back();
}

} // namespace latmc
