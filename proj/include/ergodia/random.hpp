#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ergodia {

/// SplitMix64. The whole state transition is integer arithmetic mod 2^64, so any
/// language reproduces the same stream from the same seed:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Indices in [0, M) are drawn as `next() % M`.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// `count` seeded random start points in [0, M), in draw order (repeats allowed).
inline std::vector<std::uint32_t> random_start_points(std::uint32_t M, std::size_t count, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<std::uint32_t> out(count);
    for (auto& y : out) y = static_cast<std::uint32_t>(rng.below(M));
    return out;
}

/// Every floor(M/s)-th index, then `extras` seeded random indices; sorted, deduplicated.
inline std::vector<std::uint32_t> stratified_start_points(std::uint32_t M, std::size_t strata, std::size_t extras,
                                                          std::uint64_t seed)
{
    std::vector<std::uint32_t> out;
    if (strata > M) strata = M;
    if (strata > 0) {
        const std::uint32_t step = M / static_cast<std::uint32_t>(strata);
        for (std::size_t i = 0; i < strata; ++i) out.push_back(static_cast<std::uint32_t>(i * step));
    }
    auto random = random_start_points(M, extras, seed);
    out.insert(out.end(), random.begin(), random.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ergodia
