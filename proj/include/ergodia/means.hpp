#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "observable.hpp"
#include "permutation.hpp"
#include "rational.hpp"
#include "summation.hpp"

namespace ergodia {

/// Prefix ergodic means of one start point: means[n-1] = A_n(F, T, y).
template <typename Real = double>
struct MeanSeries {
    std::size_t M = 0;
    index_t y = 0;
    std::uint64_t n_max = 0;
    std::vector<Real> means;

    /// A_n, 1-based.
    [[nodiscard]] const Real& operator[](std::uint64_t n) const { return means.at(n - 1); }
};

inline void require_compatible(const Observable& F, const FinitePermutation& T)
{
    if (F.size() != T.size()) throw std::invalid_argument("observable and permutation live on different spaces");
}

/// A_n(F,T,y) = (1/n) sum_{i<n} F(T^i y) for n = 1..n_max in one pass.
template <typename Real = double>
MeanSeries<Real> ergodic_means_prefix(const Observable& F, const FinitePermutation& T, index_t y, std::uint64_t n_max)
{
    require_compatible(F, T);
    T.require_in_range(y);
    if (n_max == 0) throw std::invalid_argument("n_max must be at least 1");

    MeanSeries<Real> series{T.size(), y, n_max, {}};
    series.means.reserve(n_max);
    Accumulator<Real> sum;
    index_t z = y;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        sum.add(F.value<Real>(z));
        series.means.push_back(sum.value() / Real(n));
        z = T(z);
    }
    return series;
}

/// Orbit mean F^(y) = (1/|Orb(y)|) sum over the orbit of y.
template <typename Real = double>
Real orbit_average(const Observable& F, const FinitePermutation& T, index_t y)
{
    require_compatible(F, T);
    T.require_in_range(y);
    Accumulator<Real> sum;
    std::uint64_t p = 0;
    index_t z = y;
    do {
        sum.add(F.value<Real>(z));
        ++p;
        z = T(z);
    } while (z != y);
    return sum.value() / Real(p);
}

/// Orbit means for every point, O(M) total (one pass per cycle).
template <typename Real = double>
std::vector<Real> orbit_averages(const Observable& F, const FinitePermutation& T)
{
    require_compatible(F, T);
    const auto idx = T.cycle_index();
    std::vector<Real> out(T.size());
    for (std::size_t c = 0; c < idx->cycle_count(); ++c) {
        Accumulator<Real> sum;
        const auto cycle = idx->cycle(c);
        for (index_t z : cycle) sum.add(F.value<Real>(z));
        const Real mean = sum.value() / Real(cycle.size());
        for (index_t z : cycle) out[z] = mean;
    }
    return out;
}

struct GammaPoint {
    std::uint64_t n = 0;
    double n_over_M = 0.0;
    double mean = 0.0;
};

/// Downsampled point set {(n/M, A_n)}, n = stride, 2*stride, ..., floor(kM).
struct GammaSeries {
    std::size_t M = 0;
    index_t y = 0;
    Scale k;
    std::uint64_t horizon = 0;
    std::uint64_t stride = 1;
    std::vector<GammaPoint> points;
};

inline std::uint64_t default_gamma_stride(std::uint64_t horizon)
{
    return std::max<std::uint64_t>(1, horizon / 100'000);
}

inline GammaSeries gamma_series(const Observable& F, const FinitePermutation& T, index_t y, Scale k,
                                std::optional<std::uint64_t> stride = std::nullopt)
{
    require_compatible(F, T);
    T.require_in_range(y);
    const std::uint64_t horizon = k.horizon(T.size());
    if (horizon == 0) throw std::invalid_argument("empty range: k*M < 1");
    const std::uint64_t step = stride.value_or(default_gamma_stride(horizon));
    if (step == 0) throw std::invalid_argument("stride must be positive");
    if (step > horizon) throw std::invalid_argument("empty range: stride exceeds floor(k*M)");

    GammaSeries out{T.size(), y, k, horizon, step, {}};
    out.points.reserve(horizon / step);
    CompensatedSum sum;
    index_t z = y;
    const double M = static_cast<double>(T.size());
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        sum += F(z);
        z = T(z);
        if (n % step == 0) out.points.push_back({n, static_cast<double>(n) / M, sum.value() / static_cast<double>(n)});
    }
    return out;
}

} // namespace ergodia
