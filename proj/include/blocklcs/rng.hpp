#pragma once

#include <cstdint>
#include <random>

namespace blocklcs {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Stream-splitting rule: the seed of stream `stream` under `master` is
/// splitmix64(master ^ splitmix64(stream)). Distinct streams of one master
/// seed feed independent generators.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return splitmix64(master ^ splitmix64(stream));
}

/// Seeds used by one Monte Carlo replicate: X, Y and an auxiliary stream
/// (modification sampling). Replicate r uses streams 3r, 3r+1, 3r+2.
struct ReplicateSeeds {
    std::uint64_t x;
    std::uint64_t y;
    std::uint64_t aux;
};

constexpr ReplicateSeeds replicate_seeds(std::uint64_t master, std::uint64_t replicate) noexcept {
    return {derive_seed(master, 3 * replicate), derive_seed(master, 3 * replicate + 1),
            derive_seed(master, 3 * replicate + 2)};
}

/// mt19937_64 with distribution code of our own, so that draws are identical
/// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), bound >= 1, by rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r = engine_();
        while (r >= limit) r = engine_();
        return r % bound;
    }

    int bit() { return static_cast<int>(engine_() >> 63); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace blocklcs
