#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "observable.hpp"
#include "parallel.hpp"
#include "summation.hpp"

namespace ergodia {

namespace detail {

template <typename Real>
Real abs_value(const Real& x)
{
    if constexpr (std::is_same_v<Real, Rational>)
        return boost::multiprecision::abs(x);
    else
        return std::abs(x);
}

} // namespace detail

/// Av(F) = (1/M) sum_y F(y).
template <typename Real = double>
Real average(const Observable& F)
{
    Accumulator<Real> sum;
    for (std::size_t y = 0; y < F.size(); ++y) sum.add(F.value<Real>(static_cast<index_t>(y)));
    return sum.value() / Real(F.size());
}

/// Av(|F|).
template <typename Real = double>
Real average_abs(const Observable& F)
{
    Accumulator<Real> sum;
    for (std::size_t y = 0; y < F.size(); ++y) sum.add(detail::abs_value(F.value<Real>(static_cast<index_t>(y))));
    return sum.value() / Real(F.size());
}

/// Tail mass (1/M) sum over {|F| > k} of |F|.
template <typename Real = double>
Real tail_mass(const Observable& F, const Real& k)
{
    if (!(k > Real(0))) throw std::invalid_argument("threshold k must be positive");
    Accumulator<Real> sum;
    for (std::size_t y = 0; y < F.size(); ++y) {
        const Real v = detail::abs_value(F.value<Real>(static_cast<index_t>(y)));
        if (v > k) sum.add(v);
    }
    return sum.value() / Real(F.size());
}

/// Complement of the tail: (1/M) sum over {|F| <= k} of |F|.
template <typename Real = double>
Real body_mass(const Observable& F, const Real& k)
{
    Accumulator<Real> sum;
    for (std::size_t y = 0; y < F.size(); ++y) {
        const Real v = detail::abs_value(F.value<Real>(static_cast<index_t>(y)));
        if (!(v > k)) sum.add(v);
    }
    return sum.value() / Real(F.size());
}

/// (1/M) sum over y in A of |F(y)|. Repeated indices count once.
template <typename Real = double>
Real small_set_mass(const Observable& F, std::span<const index_t> A)
{
    std::vector<std::uint8_t> member(F.size(), 0);
    for (index_t y : A) {
        if (y >= F.size()) throw std::out_of_range("set element outside Y");
        member[y] = 1;
    }
    Accumulator<Real> sum;
    for (std::size_t y = 0; y < F.size(); ++y)
        if (member[y]) sum.add(detail::abs_value(F.value<Real>(static_cast<index_t>(y))));
    return sum.value() / Real(F.size());
}

struct IntegrabilityProfile {
    std::vector<double> thresholds;
    std::vector<double> tail;
    double av_abs = 0.0;
    double max_abs = 0.0;
};

/// {1, 2, 4, ...} up to the first power of two at or above 2*max_abs.
inline std::vector<double> default_thresholds(double max_abs)
{
    std::vector<double> ks{1.0};
    while (ks.back() < 2.0 * max_abs) ks.push_back(ks.back() * 2.0);
    return ks;
}

/// Tail masses at every threshold in a single pass over F.
inline IntegrabilityProfile integrability_profile(const Observable& F, std::vector<double> ks)
{
    if (ks.empty()) throw std::invalid_argument("empty threshold list");
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!(ks[i] > 0.0)) throw std::invalid_argument("thresholds must be positive");
        if (i > 0 && !(ks[i] > ks[i - 1])) throw std::invalid_argument("thresholds must be increasing");
    }

    // bucket[b] collects |F| with exactly b thresholds strictly below it.
    std::vector<CompensatedSum> bucket(ks.size() + 1);
    CompensatedSum total;
    double max_abs = 0.0;
    for (std::size_t y = 0; y < F.size(); ++y) {
        const double v = std::abs(F(static_cast<index_t>(y)));
        total += v;
        max_abs = std::max(max_abs, v);
        const auto b = static_cast<std::size_t>(std::lower_bound(ks.begin(), ks.end(), v) - ks.begin());
        bucket[b] += v;
    }

    IntegrabilityProfile profile;
    profile.thresholds = std::move(ks);
    profile.tail.assign(profile.thresholds.size(), 0.0);
    const double M = static_cast<double>(F.size());
    CompensatedSum above;
    for (std::size_t i = profile.thresholds.size(); i-- > 0;) {
        above += bucket[i + 1].value();
        profile.tail[i] = above.value() / M;
    }
    profile.av_abs = total.value() / M;
    profile.max_abs = max_abs;
    return profile;
}

inline IntegrabilityProfile integrability_profile(const Observable& F)
{
    double max_abs = 0.0;
    for (std::size_t y = 0; y < F.size(); ++y) max_abs = std::max(max_abs, std::abs(F(static_cast<index_t>(y))));
    return integrability_profile(F, default_thresholds(max_abs));
}

/// Profile of a family F_n (one member per space size); sup_tail is the
/// supremum over members at each threshold, the finite side of uniform integrability.
struct FamilyProfile {
    std::vector<double> thresholds;
    std::vector<double> sup_tail;
    std::vector<IntegrabilityProfile> members;
};

inline FamilyProfile family_profile(std::span<const Observable> family, const std::vector<double>& ks,
                                    unsigned threads = 1)
{
    if (family.empty()) throw std::invalid_argument("empty observable family");
    FamilyProfile out;
    out.thresholds = ks;
    out.members.resize(family.size());
    parallel_for(family.size(), threads, [&](std::size_t i) { out.members[i] = integrability_profile(family[i], ks); });
    out.sup_tail.assign(ks.size(), 0.0);
    for (const auto& m : out.members)
        for (std::size_t i = 0; i < ks.size(); ++i) out.sup_tail[i] = std::max(out.sup_tail[i], m.tail[i]);
    return out;
}

} // namespace ergodia
