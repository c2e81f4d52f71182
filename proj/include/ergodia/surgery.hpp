#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "permutation.hpp"

namespace ergodia {

struct TransitiveResult {
    FinitePermutation C;
    /// {y : C(y) != T(y)}, ascending
    std::vector<index_t> B;
    std::size_t cycle_count = 0;
};

/// Joins the cycles of T, longest first, into one M-cycle. Each seam redirects the last
/// element of a cycle to the first element of the next, so |B| = b when b >= 2.
inline TransitiveResult make_transitive(const FinitePermutation& T)
{
    const auto cycles = cycle_decomposition(T);
    if (cycles.size() == 1) return {T, {}, 1};
    std::vector<index_t> image(T.image().begin(), T.image().end());
    for (std::size_t i = 0; i < cycles.size(); ++i) image[cycles[i].back()] = cycles[(i + 1) % cycles.size()].front();
    TransitiveResult out{FinitePermutation(std::move(image)), {}, cycles.size()};
    for (std::size_t y = 0; y < T.size(); ++y)
        if (out.C(static_cast<index_t>(y)) != T(static_cast<index_t>(y))) out.B.push_back(static_cast<index_t>(y));
    return out;
}

struct SplitResult {
    /// Y' ascending; T'' acts on positions 0..|Y'|-1 of this list
    std::vector<index_t> kept;
    std::optional<FinitePermutation> T;
    /// the n-cycles in original labels
    std::vector<std::vector<index_t>> cycles;
    std::vector<index_t> trimmed;

    [[nodiscard]] bool empty() const { return kept.empty(); }
    [[nodiscard]] double trimmed_fraction(std::size_t M) const
    {
        return static_cast<double>(trimmed.size()) / static_cast<double>(M);
    }
};

/// Drops the last r_i elements of each cycle (length n q_i + r_i) and cuts the rest into
/// q_i consecutive n-cycles. If n exceeds every cycle length the result is empty.
inline SplitResult split_into_n_cycles(const FinitePermutation& T, std::size_t n)
{
    if (n == 0) throw std::invalid_argument("cycle length n must be at least 1");
    SplitResult out;
    for (const auto& c : cycle_decomposition(T)) {
        const std::size_t q = c.size() / n;
        for (std::size_t j = 0; j < q; ++j) out.cycles.emplace_back(c.begin() + j * n, c.begin() + (j + 1) * n);
        out.trimmed.insert(out.trimmed.end(), c.begin() + q * n, c.end());
        for (std::size_t i = 0; i < q * n; ++i) out.kept.push_back(c[i]);
    }
    std::sort(out.kept.begin(), out.kept.end());
    std::sort(out.trimmed.begin(), out.trimmed.end());
    if (out.kept.empty()) return out;

    std::vector<index_t> relabel(T.size(), 0);
    for (std::size_t i = 0; i < out.kept.size(); ++i) relabel[out.kept[i]] = static_cast<index_t>(i);
    std::vector<index_t> image(out.kept.size());
    for (const auto& c : out.cycles)
        for (std::size_t i = 0; i < c.size(); ++i) image[relabel[c[i]]] = relabel[c[(i + 1) % c.size()]];
    out.T.emplace(std::move(image));
    return out;
}

} // namespace ergodia
