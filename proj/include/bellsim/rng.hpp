#pragma once

#include <cstdint>
#include <vector>

namespace bellsim {

// Derives an independent stream seed from a base seed. Used to give every
// sweep point, sample chunk or trial its own generator, which makes results
// independent of thread count.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// SplitMix64: tiny, seedable, splittable. Entirely adequate as the sampling
// source here and trivially reproducible across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t size_below(std::uint64_t n) { return next_u64() % n; }

    // Generator for an independent derived stream; the split depends on the
    // original seed only, not on how much this generator has been consumed.
    SplitMix64 split(std::uint64_t stream) const { return SplitMix64(derive_seed(seed_, stream)); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

// Draws indices proportional to the given nonnegative weights.
class CumulativeSampler {
public:
    explicit CumulativeSampler(const std::vector<double>& weights);

    std::size_t sample(SplitMix64& rng) const;

private:
    std::vector<double> cumulative_;
};

}  // namespace bellsim
