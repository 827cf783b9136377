#pragma once

#include <cstdint>
#include <random>

namespace hcm {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). Rejection sampling keeps the stream
/// identical across standard library implementations.
inline auto uniform_below(Rng& rng, std::uint64_t bound) -> std::uint64_t
{
    // 2^64 mod bound; values below it would bias the residue.
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t x = rng();
        if (x >= threshold)
            return x % bound;
    }
}

inline auto uniform_unit(Rng& rng) -> double
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace hcm
