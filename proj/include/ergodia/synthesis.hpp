#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "matching.hpp"
#include "metric_space.hpp"
#include "permutation.hpp"

namespace ergodia {

enum class GridGeometry { circle, interval };

struct SynthesisResult {
    FinitePermutation T;
    /// sources not matched to a grid point within delta of their target
    std::size_t mismatch_count = 0;
    std::vector<index_t> slack_sources;
    /// sources whose delta-neighborhood holds no grid point at all
    std::size_t empty_neighborhoods = 0;
};

/// Grid points j (phi(j) = j/M) with distance(j/M, x) < delta, as an arc of indices.
inline Arc grid_neighborhood(std::size_t M, double x, double delta, GridGeometry geometry)
{
    const double m = static_cast<double>(M);
    const auto dist = [&](std::int64_t j) {
        const double p = static_cast<double>(j) / m;
        return geometry == GridGeometry::circle ? CircleSpace::distance(p, x) : std::abs(p - x);
    };
    std::int64_t lo = static_cast<std::int64_t>(std::floor((x - delta) * m)) - 1;
    std::int64_t hi = static_cast<std::int64_t>(std::ceil((x + delta) * m)) + 1;
    if (geometry == GridGeometry::interval) {
        lo = std::max<std::int64_t>(lo, 0);
        hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(M) - 1);
    }
    while (lo <= hi && !(dist(lo) < delta)) ++lo;
    while (hi >= lo && !(dist(hi) < delta)) --hi;
    if (lo > hi) return {0, 0};
    const std::int64_t len = hi - lo + 1;
    if (len >= static_cast<std::int64_t>(M)) return {0, static_cast<std::uint32_t>(M)};
    const std::int64_t start = ((lo % static_cast<std::int64_t>(M)) + static_cast<std::int64_t>(M)) % static_cast<std::int64_t>(M);
    return {static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(len)};
}

/// Permutation T_delta of the grid with |phi(T y) - target(y)| < delta for all but
/// mismatch_count points. Sources are matched to grid points near their targets by a
/// maximum matching; unmatched sources take the leftover grid points in index order.
inline SynthesisResult synthesize_permutation(std::span<const double> target_images, double delta,
                                              GridGeometry geometry = GridGeometry::circle)
{
    const std::size_t M = target_images.size();
    if (M == 0) throw std::invalid_argument("empty grid");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");

    std::vector<Arc> arcs(M);
    std::size_t empty = 0;
    for (std::size_t y = 0; y < M; ++y) {
        arcs[y] = grid_neighborhood(M, target_images[y], delta, geometry);
        if (arcs[y].len == 0) ++empty;
    }
    const Matching match = interval_matching(arcs, M);

    std::vector<index_t> image(M);
    std::vector<index_t> slack;
    for (std::size_t y = 0; y < M; ++y) {
        if (match.target_of[y] == unmatched)
            slack.push_back(static_cast<index_t>(y));
        else
            image[y] = match.target_of[y];
    }
    std::size_t next_free = 0;
    for (index_t y : slack) {
        while (match.source_of[next_free] != unmatched) ++next_free;
        image[y] = static_cast<index_t>(next_free++);
    }
    return {FinitePermutation(std::move(image)), slack.size(), std::move(slack), empty};
}

} // namespace ergodia
