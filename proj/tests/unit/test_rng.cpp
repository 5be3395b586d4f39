#include "doctest.h"

#include <random>
#include <vector>

#include "latmc/errors.hpp"
#include "latmc/rng.hpp"

using namespace latmc;

TEST_CASE("engine is the standard mt19937_64") {
    // The standard fixes the 10000th output for the default seed.
    Rng rng(std::mt19937_64::default_seed);
    std::mt19937_64 reference;
    reference.discard(9999);
    const std::uint64_t expected = reference();
    CHECK(expected == 9981545732273789042ULL);
    Rng again(std::mt19937_64::default_seed);
    for (int i = 0; i < 9999; ++i)
        again.uniform_real();
    CHECK(static_cast<std::uint64_t>(again.uniform_real() * 0x1.0p53) == expected >> 11);
}

TEST_CASE("uniform draws stay in range and count themselves") {
    Rng rng(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform_real();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(rng.uniform_index(27) < 27);
    }
    CHECK(rng.real_draws() == 100000);
    CHECK(rng.index_draws() == 100000);
    CHECK(rng.uniform_index(1) == 0);
}

TEST_CASE("uniform_index is unbiased") {
    Rng rng(3);
    std::vector<int> hist(6, 0);
    const int n = 600000;
    for (int i = 0; i < n; ++i)
        ++hist[rng.uniform_index(6)];
    for (int count : hist)
        CHECK(std::abs(count - n / 6) < 5 * std::sqrt(n / 6.0));
}

TEST_CASE("serialize round trip continues the same stream") {
    Rng a(99);
    for (int i = 0; i < 1234; ++i)
        a.uniform_index(1000);
    Rng b = Rng::deserialize(a.serialize());
    CHECK(a == b);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a.uniform_real() == b.uniform_real());
    CHECK_THROWS_AS(Rng::deserialize("garbage"), ParseError);
    CHECK_THROWS_AS(Rng::deserialize(a.serialize() + " 17"), ParseError);
}
