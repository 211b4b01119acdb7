#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "bellsim/rng.hpp"

using namespace bellsim;

TEST_CASE("splitmix64 is reproducible and seed-sensitive") {
    SplitMix64 a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool all_equal = true;
    SplitMix64 a2(42);
    for (int i = 0; i < 100; ++i) all_equal &= (a2.next_u64() == c.next_u64());
    CHECK_FALSE(all_equal);
}

TEST_CASE("split streams are independent of consumption") {
    SplitMix64 fresh(7);
    SplitMix64 consumed(7);
    for (int i = 0; i < 50; ++i) consumed.next_u64();
    CHECK(fresh.split(3).next_u64() == consumed.split(3).next_u64());
    CHECK(fresh.split(3).next_u64() != fresh.split(4).next_u64());
}

TEST_CASE("uniform lies in [0,1) and has a sane mean") {
    SplitMix64 rng(99);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("cumulative sampler hits weighted frequencies") {
    const std::vector<double> weights = {0.1, 0.0, 0.7, 0.2};
    CumulativeSampler sampler(weights);
    SplitMix64 rng(123);
    std::vector<int> counts(4, 0);
    const int n = 200000;
    for (int i = 0; i < n; ++i) counts[sampler.sample(rng)]++;
    CHECK(counts[1] == 0);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(counts[i] / static_cast<double>(n) - weights[i]) < 0.01);
    }
    CHECK_THROWS_AS(CumulativeSampler(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(CumulativeSampler(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}
