#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace latmc {

/**
 * Seeded pseudorandom stream used by every stochastic operation.
 *
 * The engine is std::mt19937_64, whose output sequence for a given seed is
 * fixed by the C++ standard. The standard distributions are not portable, so
 * the two draw kinds are implemented here:
 *
 *   uniform_real()    top 53 bits of one engine output times 2^-53, in [0, 1)
 *   uniform_index(n)  Lemire's multiply-and-reject mapping onto [0, n);
 *                     consumes one engine output except on the rare rejection
 *
 * Counters track how many draws of each kind were requested, not how many
 * engine outputs were consumed.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    double uniform_real() noexcept {
        ++real_draws_;
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t uniform_index(std::uint64_t n) noexcept {
        ++index_draws_;
        __extension__ using u128 = unsigned __int128;
        u128 product = static_cast<u128>(engine_()) * n;
        auto low = static_cast<std::uint64_t>(product);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                product = static_cast<u128>(engine_()) * n;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    std::uint64_t real_draws() const noexcept { return real_draws_; }
    std::uint64_t index_draws() const noexcept { return index_draws_; }

    // Text form of engine state and counters; round-trips exactly.
    std::string serialize() const;
    static Rng deserialize(std::string_view text);

    bool operator==(const Rng& other) const noexcept {
        return engine_ == other.engine_ && real_draws_ == other.real_draws_ &&
               index_draws_ == other.index_draws_;
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t real_draws_ = 0;
    std::uint64_t index_draws_ = 0;
};

} // namespace latmc
