#pragma once

#include <cstdint>

namespace girard::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// splitmix64 output function.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// Derives the key of one substream. Components are folded in positionally so
/// that permuted tuples land in different streams.
inline constexpr std::uint64_t substream_key(std::uint64_t seed, std::uint64_t stream,
                                             std::uint64_t dimension, std::uint64_t replicate) {
    std::uint64_t h = mix64(seed + kGoldenGamma);
    h = mix64(h ^ (stream + 1 * kGoldenGamma));
    h = mix64(h ^ (dimension + 2 * kGoldenGamma));
    h = mix64(h ^ (replicate + 3 * kGoldenGamma));
    return h;
}

/// Counter-based generator: the i-th output is mix64(key + i * gamma), so a
/// stream is a pure function of (key, counter). Streams with distinct keys
/// can be drawn from concurrently in any schedule and still reproduce.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() {
        ++counter_;
        return mix64(key_ + counter_ * kGoldenGamma);
    }

    /// Uniform double on the open interval (0,1). Exact zeros are rejected
    /// so downstream log(x) and negative powers stay finite; 1.0 is not
    /// representable by the 53-bit ladder used here.
    double next_uniform01() {
        for (;;) {
            const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
            if (u != 0.0) return u;
        }
    }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace girard::rng
