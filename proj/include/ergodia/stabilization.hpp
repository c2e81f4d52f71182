#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "integrability.hpp"
#include "means.hpp"
#include "orbit_sums.hpp"
#include "parallel.hpp"

namespace ergodia {

/// |A_K - A_L| for one start point with the two terms of the bound
///   |A_K - A_L| <= U + V,
///   U = (1/L - 1/K) sum_{k<L} |F(T^k y)|,   V = (1/K) sum_{L<=k<K} |F(T^k y)|.
template <typename Real>
struct DiscrepancyTerms {
    index_t y = 0;
    Real gap{};
    Real U{};
    Real V{};
};

/// Direct O(K) evaluation; with Real = Rational every quantity is exact.
template <typename Real = double>
DiscrepancyTerms<Real> discrepancy_terms(const Observable& F, const FinitePermutation& T, index_t y, std::uint64_t K,
                                         std::uint64_t L)
{
    require_compatible(F, T);
    T.require_in_range(y);
    if (L == 0 || K <= L) throw std::invalid_argument("horizons must satisfy 1 <= L < K");
    Accumulator<Real> head, head_abs, tail, tail_abs;
    index_t z = y;
    for (std::uint64_t k = 0; k < K; ++k) {
        const Real v = F.value<Real>(z);
        const Real a = detail::abs_value(v);
        if (k < L) {
            head.add(v);
            head_abs.add(a);
        } else {
            tail.add(v);
            tail_abs.add(a);
        }
        z = T(z);
    }
    const Real AL = head.value() / Real(L);
    const Real AK = (head.value() + tail.value()) / Real(K);
    DiscrepancyTerms<Real> out;
    out.y = y;
    out.gap = detail::abs_value(Real(AK - AL));
    out.U = (Real(1) / Real(L) - Real(1) / Real(K)) * head_abs.value();
    out.V = tail_abs.value() / Real(K);
    return out;
}

struct DiscrepancyReport {
    std::uint64_t K = 0;
    std::uint64_t L = 0;
    std::size_t M = 0;
    double sup_disc = 0.0;
    index_t argmax = 0;
    /// every |A_K - A_L|, ascending; backs exceedance()
    std::vector<double> sorted_gaps;
    /// proof terms at the requested start points (plus the maximizer)
    std::vector<DiscrepancyTerms<double>> tested;
    /// points (over all of Y) where |A_K - A_L| > U + V beyond rounding
    std::size_t bound_violations = 0;

    /// (1/M) |{y : |A_K - A_L| >= eps}|
    [[nodiscard]] double exceedance(double eps) const
    {
        if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
        const auto first = std::lower_bound(sorted_gaps.begin(), sorted_gaps.end(), eps);
        return static_cast<double>(sorted_gaps.end() - first) / static_cast<double>(M);
    }
};

/// Exact max over all y of |A_K - A_L|, O(M) for any permutation via cycle prefix sums.
inline DiscrepancyReport sup_discrepancy(const Observable& F, const FinitePermutation& T, std::uint64_t K,
                                         std::uint64_t L, std::span<const index_t> tested = {})
{
    require_compatible(F, T);
    if (L == 0 || K <= L) throw std::invalid_argument("horizons must satisfy 1 <= L < K");
    const OrbitSums sums(F, T);
    const std::size_t M = T.size();

    DiscrepancyReport report;
    report.K = K;
    report.L = L;
    report.M = M;
    report.sorted_gaps.resize(M);

    const long double invK = 1.0L / static_cast<long double>(K);
    const long double invL = 1.0L / static_cast<long double>(L);
    const auto terms_at = [&](index_t y) {
        const long double head = sums.sum(y, 0, L);
        const long double all = head + sums.sum(y, L, K);
        DiscrepancyTerms<double> t;
        t.y = y;
        t.gap = static_cast<double>(std::abs(all * invK - head * invL));
        t.U = static_cast<double>((invL - invK) * sums.abs_sum(y, 0, L));
        t.V = static_cast<double>(invK * sums.abs_sum(y, L, K));
        return t;
    };

    for (std::size_t y = 0; y < M; ++y) {
        const auto t = terms_at(static_cast<index_t>(y));
        report.sorted_gaps[y] = t.gap;
        if (t.gap > report.sup_disc) {
            report.sup_disc = t.gap;
            report.argmax = static_cast<index_t>(y);
        }
        const double slack = 1e-12 * std::max({1.0, t.U + t.V});
        if (t.gap > t.U + t.V + slack) ++report.bound_violations;
    }
    std::sort(report.sorted_gaps.begin(), report.sorted_gaps.end());

    for (index_t y : tested) {
        T.require_in_range(y);
        report.tested.push_back(terms_at(y));
    }
    report.tested.push_back(terms_at(report.argmax));
    return report;
}

/// (1/M) |{y : |A_K - A_L| >= eps}|
inline double exceedance_fraction(const Observable& F, const FinitePermutation& T, std::uint64_t K, std::uint64_t L,
                                  double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    return sup_discrepancy(F, T, K, L).exceedance(eps);
}

/// Horizons [n_min, K_star] on which the means stay inside a band of width epsilon.
struct StabilizationSegment {
    bool common = false;
    index_t y = 0; // per-point mode only
    std::uint64_t n_min = 0;
    std::uint64_t K_star = 0;
    std::uint64_t scan_limit = 0;
    bool reached_scan_limit = false;
    double epsilon = 0.0;
    /// stabilized mean level: band midpoint (per point) or mean of A_{K_star} over kept points (common)
    double witness = 0.0;
    // common mode
    double eta = 0.0;
    std::size_t sample_size = 0;
    double excluded_fraction = 0.0;
    std::vector<index_t> excluded;
};

namespace detail {

struct BandScan {
    std::uint64_t K_star = 0;
    double lo = 0.0;
    double hi = 0.0;
};

inline BandScan scan_band(const Observable& F, const FinitePermutation& T, index_t y, std::uint64_t n_min,
                          double eps, std::uint64_t scan_limit)
{
    CompensatedSum sum;
    index_t z = y;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::uint64_t n = 1; n <= scan_limit; ++n) {
        sum += F(z);
        z = T(z);
        if (n < n_min) continue;
        const double A = sum.value() / static_cast<double>(n);
        const double new_lo = std::min(lo, A), new_hi = std::max(hi, A);
        if (new_hi - new_lo > eps) return {n - 1, lo, hi};
        lo = new_lo;
        hi = new_hi;
    }
    return {scan_limit, lo, hi};
}

inline void validate_band_args(std::uint64_t n_min, double eps, std::uint64_t scan_limit)
{
    if (n_min == 0) throw std::invalid_argument("n_min must be at least 1");
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (n_min > scan_limit) throw std::invalid_argument("n_min exceeds the scan limit");
}

} // namespace detail

/// Largest K_star <= scan_limit such that all A_n, n in [n_min, K_star], lie in a band of width eps.
/// One pass with running min/max; K_star >= n_min always.
inline StabilizationSegment stabilization_segment(const Observable& F, const FinitePermutation& T, index_t y,
                                                  std::uint64_t n_min, double eps, std::uint64_t scan_limit)
{
    require_compatible(F, T);
    T.require_in_range(y);
    detail::validate_band_args(n_min, eps, scan_limit);
    const auto scan = detail::scan_band(F, T, y, n_min, eps, scan_limit);
    StabilizationSegment seg;
    seg.y = y;
    seg.n_min = n_min;
    seg.K_star = scan.K_star;
    seg.scan_limit = scan_limit;
    seg.reached_scan_limit = scan.K_star == scan_limit;
    seg.epsilon = eps;
    seg.witness = 0.5 * (scan.lo + scan.hi);
    return seg;
}

/// Largest K_star such that at least (1 - eta) of the sampled start points keep their
/// per-point band on [n_min, K_star]. The rest form the excluded set.
inline StabilizationSegment common_stabilization_segment(const Observable& F, const FinitePermutation& T,
                                                         std::uint64_t n_min, double eps, double eta,
                                                         std::uint64_t scan_limit, std::span<const index_t> sample,
                                                         unsigned threads = 1)
{
    require_compatible(F, T);
    detail::validate_band_args(n_min, eps, scan_limit);
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
    if (sample.empty() || sample.size() > T.size()) throw std::invalid_argument("degenerate start-point sample");
    for (index_t y : sample) T.require_in_range(y);

    const Observable dense = F.materialized();
    std::vector<std::uint64_t> reach(sample.size());
    parallel_for(sample.size(), threads, [&](std::size_t i) {
        reach[i] = detail::scan_band(dense, T, sample[i], n_min, eps, scan_limit).K_star;
    });

    std::vector<std::uint64_t> sorted = reach;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double need = (1.0 - eta) * static_cast<double>(sample.size());
    auto keep = static_cast<std::size_t>(std::ceil(need - 1e-9));
    keep = std::clamp<std::size_t>(keep, 1, sample.size());

    StabilizationSegment seg;
    seg.common = true;
    seg.n_min = n_min;
    seg.K_star = sorted[keep - 1];
    seg.scan_limit = scan_limit;
    seg.reached_scan_limit = seg.K_star == scan_limit;
    seg.epsilon = eps;
    seg.eta = eta;
    seg.sample_size = sample.size();

    const OrbitSums sums(dense, T);
    CompensatedSum level;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (reach[i] < seg.K_star) {
            seg.excluded.push_back(sample[i]);
        } else {
            level += sums.mean(sample[i], seg.K_star);
            ++kept;
        }
    }
    seg.excluded_fraction = static_cast<double>(seg.excluded.size()) / static_cast<double>(sample.size());
    seg.witness = level.value() / static_cast<double>(kept);
    return seg;
}

/// max over sampled y and n in [n_lo, n_hi] of |A_n(F,T,y) - Av(F)|: the width of the
/// mean band around horizons comparable to M.
inline double deviation_from_average(const Observable& F, const FinitePermutation& T, std::span<const index_t> sample,
                                     std::uint64_t n_lo, std::uint64_t n_hi)
{
    require_compatible(F, T);
    if (n_lo == 0 || n_hi < n_lo) throw std::invalid_argument("invalid horizon range");
    const Observable dense = F.materialized();
    const OrbitSums sums(dense, T);
    CompensatedSum total;
    for (std::size_t y = 0; y < dense.size(); ++y) total += dense(static_cast<index_t>(y));
    const double av = total.value() / static_cast<double>(dense.size());
    double worst = 0.0;
    for (index_t y : sample) {
        T.require_in_range(y);
        for (std::uint64_t n = n_lo; n <= n_hi; ++n) worst = std::max(worst, std::abs(sums.mean(y, n) - av));
    }
    return worst;
}

/// Limit profile of A_K for F(y) = y/M under y -> y+1 mod M, with a = K/M, t = y/M:
///   psi(a,t) = t + a/2                          for t <= 1-a
///   psi(a,t) = t + a/2 - 1 + (1/a)(1-t)         for t >  1-a
inline double reference_psi(double a, double t)
{
    if (a < 0.0 || a > 1.0 || t < 0.0 || t > 1.0) throw std::invalid_argument("psi is defined on [0,1]^2");
    if (t <= 1.0 - a) return t + a / 2.0;
    if (a == 0.0) throw std::invalid_argument("psi(0, t) undefined for t > 1");
    return t + a / 2.0 - 1.0 + (1.0 - t) / a;
}

} // namespace ergodia
