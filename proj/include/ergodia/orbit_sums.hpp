#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "observable.hpp"
#include "permutation.hpp"

namespace ergodia {

/// Prefix sums of F (and |F|) laid out along each cycle of T, so that any
/// orbit segment sum  sum_{a <= i < b} F(T^i y)  costs O(1), for any a < b,
/// including segments that wrap around the cycle several times.
class OrbitSums {
public:
    OrbitSums(const Observable& F, const FinitePermutation& T) : cycles_(T.cycle_index())
    {
        if (F.size() != T.size()) throw std::invalid_argument("observable and permutation live on different spaces");
        const std::size_t M = T.size();
        // One extra slot per cycle holds the leading zero of its prefix array.
        prefix_.resize(M + cycles_->cycle_count());
        abs_prefix_.resize(prefix_.size());
        for (std::size_t c = 0; c < cycles_->cycle_count(); ++c) {
            const std::size_t base = cycles_->cycle_offset[c] + c;
            long double s = 0.0L, a = 0.0L;
            prefix_[base] = 0.0L;
            abs_prefix_[base] = 0.0L;
            const auto cycle = cycles_->cycle(c);
            for (std::size_t j = 0; j < cycle.size(); ++j) {
                const double v = F(cycle[j]);
                s += v;
                a += std::abs(v);
                prefix_[base + j + 1] = s;
                abs_prefix_[base + j + 1] = a;
            }
        }
    }

    /// sum_{a <= i < b} F(T^i y)
    [[nodiscard]] long double sum(index_t y, std::uint64_t a, std::uint64_t b) const { return segment(prefix_, y, a, b); }

    /// sum_{a <= i < b} |F(T^i y)|
    [[nodiscard]] long double abs_sum(index_t y, std::uint64_t a, std::uint64_t b) const
    {
        return segment(abs_prefix_, y, a, b);
    }

    /// A_n(F, T, y)
    [[nodiscard]] double mean(index_t y, std::uint64_t n) const
    {
        return static_cast<double>(sum(y, 0, n) / static_cast<long double>(n));
    }

    [[nodiscard]] std::uint64_t period(index_t y) const { return cycles_->cycle_length[cycles_->cycle_of[y]]; }

private:
    [[nodiscard]] long double segment(const std::vector<long double>& P, index_t y, std::uint64_t a,
                                      std::uint64_t b) const
    {
        if (b <= a) return 0.0L;
        const index_t c = cycles_->cycle_of[y];
        const std::uint64_t p = cycles_->cycle_length[c];
        const std::size_t base = cycles_->cycle_offset[c] + c;
        const std::uint64_t local = cycles_->position[y] - cycles_->cycle_offset[c];
        const auto upto = [&](std::uint64_t n) {
            // sum of the first n terms starting from `local`
            const std::uint64_t q = n / p, r = n % p;
            long double s = static_cast<long double>(q) * P[base + p];
            if (local + r <= p)
                s += P[base + local + r] - P[base + local];
            else
                s += (P[base + p] - P[base + local]) + P[base + local + r - p];
            return s;
        };
        return upto(b) - upto(a);
    }

    std::shared_ptr<const CycleIndex> cycles_;
    std::vector<long double> prefix_;
    std::vector<long double> abs_prefix_;
};

} // namespace ergodia
