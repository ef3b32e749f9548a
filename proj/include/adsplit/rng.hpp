#pragma once

#include <cstdint>

namespace adsplit {

// Stateless counter-based generator: draw k of stream i under a given seed is
// a pure function of (seed, i, k). Workers can split the stream index space
// any way they like without changing a single sample, which keeps Monte Carlo
// runs bit-identical across parallelism degrees and machines.
//
// Core is the splitmix64 finalizer over a golden-ratio-spaced counter.
class CounterRng {
public:
    static constexpr std::uint64_t kSlotsPerStream = 8;

    // Uniform double in [0, 1).
    static double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t slot) {
        const std::uint64_t ctr = stream * kSlotsPerStream + slot;
        std::uint64_t z = seed + (ctr + 1) * 0x9e3779b97f4a7c15ULL;
        z = mix(z);
        z = mix(z ^ 0x94d049bb133111ebULL);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }
};

}  // namespace adsplit
