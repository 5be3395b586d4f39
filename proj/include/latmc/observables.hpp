#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latmc/lattice.hpp"

namespace latmc {

class Chain;

struct Measurement {
    std::uint64_t step = 0;
    double w = 0.0;
    std::uint64_t u = 0;  // corrupt-agent count
    double m = 0.0;       // mean state

    bool operator==(const Measurement&) const = default;
};

// Append-only series with strictly increasing steps.
class TimeSeries {
public:
    // Throws ContractViolation unless m.step exceeds the last recorded step.
    void append(const Measurement& m);

    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }
    const Measurement& back() const { return rows_.back(); }
    const Measurement& operator[](std::size_t i) const { return rows_[i]; }
    const std::vector<Measurement>& rows() const noexcept { return rows_; }

    auto begin() const noexcept { return rows_.begin(); }
    auto end() const noexcept { return rows_.end(); }

    bool operator==(const TimeSeries&) const = default;

private:
    std::vector<Measurement> rows_;
};

// Number of sites with state > 0; equals the sum of positive states.
std::uint64_t total_profit(const Configuration& config);

double mean_state(const Configuration& config);

// (2U - M) / M, the form used for recorded measurements.
double mean_state_from_profit(std::uint64_t u, std::size_t site_count);

// Appends (step, running W, U, m) for the chain's current state.
const Measurement& record(TimeSeries& series, const Chain& chain);

} // namespace latmc
