#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ergodia {

/// Points of Y = {0, ..., M-1}.
using index_t = std::uint32_t;

/// Returns a description of the first defect if `image` is not a bijection of {0..M-1}.
inline std::optional<std::string> check_bijection(std::span<const index_t> image)
{
    const std::size_t M = image.size();
    if (M == 0) return "empty image array";
    std::vector<std::uint8_t> seen(M, 0);
    for (std::size_t y = 0; y < M; ++y) {
        const index_t z = image[y];
        if (z >= M) return "image[" + std::to_string(y) + "] = " + std::to_string(z) + " is out of range";
        if (seen[z]) return "value " + std::to_string(z) + " is hit twice (second time at y = " + std::to_string(y) + ")";
        seen[z] = 1;
    }
    return std::nullopt;
}

/// Flattened cycle structure: cycles laid out back to back in `order`,
/// each starting at its smallest element, cycles in order of their smallest element.
struct CycleIndex {
    std::vector<index_t> order;
    std::vector<index_t> position;     // position[y]: slot of y in `order`
    std::vector<index_t> cycle_of;     // cycle id of y
    std::vector<index_t> cycle_offset; // first slot of each cycle
    std::vector<index_t> cycle_length;

    [[nodiscard]] std::size_t cycle_count() const { return cycle_length.size(); }

    [[nodiscard]] std::span<const index_t> cycle(std::size_t c) const
    {
        return std::span<const index_t>(order).subspan(cycle_offset[c], cycle_length[c]);
    }
};

enum class CycleIndexing { eager, none };

/// A bijection T of Y = {0, ..., M-1}; the uniform measure on Y is implicit.
/// Immutable once constructed; copies share storage.
class FinitePermutation {
public:
    explicit FinitePermutation(std::vector<index_t> image, CycleIndexing indexing = CycleIndexing::eager)
    {
        if (auto defect = check_bijection(image)) throw std::invalid_argument("not a permutation: " + *defect);
        image_ = std::make_shared<const std::vector<index_t>>(std::move(image));
        if (indexing == CycleIndexing::eager) cycles_ = build_index(*image_);
    }

    static FinitePermutation identity(std::size_t M)
    {
        std::vector<index_t> image(M);
        for (std::size_t y = 0; y < M; ++y) image[y] = static_cast<index_t>(y);
        return FinitePermutation(std::move(image));
    }

    /// T(y) = y + P mod M.
    static FinitePermutation shift(std::size_t M, std::uint64_t P)
    {
        std::vector<index_t> image(M);
        const std::uint64_t step = M ? P % M : 0;
        for (std::size_t y = 0; y < M; ++y) image[y] = static_cast<index_t>((y + step) % M);
        return FinitePermutation(std::move(image));
    }

    /// Builds T from disjoint cycles; points not mentioned are fixed.
    static FinitePermutation from_cycles(std::size_t M, const std::vector<std::vector<index_t>>& cycles)
    {
        std::vector<index_t> image(M);
        for (std::size_t y = 0; y < M; ++y) image[y] = static_cast<index_t>(y);
        std::vector<std::uint8_t> used(M, 0);
        for (const auto& c : cycles) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] >= M) throw std::out_of_range("cycle element out of range");
                if (used[c[i]]) throw std::invalid_argument("cycles are not disjoint");
                used[c[i]] = 1;
                image[c[i]] = c[(i + 1) % c.size()];
            }
        }
        return FinitePermutation(std::move(image));
    }

    [[nodiscard]] std::size_t size() const { return image_->size(); }

    [[nodiscard]] index_t operator()(index_t y) const { return (*image_)[y]; }

    [[nodiscard]] index_t at(index_t y) const
    {
        require_in_range(y);
        return (*image_)[y];
    }

    [[nodiscard]] std::span<const index_t> image() const { return *image_; }

    [[nodiscard]] bool has_cycle_index() const { return cycles_ != nullptr; }

    /// Cycle structure; built on demand (and returned by value-shared pointer) when not eager.
    [[nodiscard]] std::shared_ptr<const CycleIndex> cycle_index() const
    {
        return cycles_ ? cycles_ : build_index(*image_);
    }

    [[nodiscard]] bool is_transitive() const { return cycle_index()->cycle_count() == 1; }

    [[nodiscard]] FinitePermutation inverse() const
    {
        std::vector<index_t> inv(size());
        for (std::size_t y = 0; y < size(); ++y) inv[(*image_)[y]] = static_cast<index_t>(y);
        return FinitePermutation(std::move(inv), cycles_ ? CycleIndexing::eager : CycleIndexing::none);
    }

    friend bool operator==(const FinitePermutation& a, const FinitePermutation& b) { return *a.image_ == *b.image_; }

    void require_in_range(std::uint64_t y) const
    {
        if (y >= size())
            throw std::out_of_range("index " + std::to_string(y) + " outside Y of size " + std::to_string(size()));
    }

private:
    static std::shared_ptr<const CycleIndex> build_index(const std::vector<index_t>& image)
    {
        const std::size_t M = image.size();
        auto idx = std::make_shared<CycleIndex>();
        idx->order.reserve(M);
        idx->position.assign(M, 0);
        idx->cycle_of.assign(M, 0);
        std::vector<std::uint8_t> visited(M, 0);
        for (std::size_t start = 0; start < M; ++start) {
            if (visited[start]) continue;
            const auto id = static_cast<index_t>(idx->cycle_length.size());
            const auto offset = static_cast<index_t>(idx->order.size());
            idx->cycle_offset.push_back(offset);
            auto y = static_cast<index_t>(start);
            do {
                visited[y] = 1;
                idx->position[y] = static_cast<index_t>(idx->order.size());
                idx->cycle_of[y] = id;
                idx->order.push_back(y);
                y = image[y];
            } while (y != start);
            idx->cycle_length.push_back(static_cast<index_t>(idx->order.size() - offset));
        }
        return idx;
    }

    std::shared_ptr<const std::vector<index_t>> image_;
    std::shared_ptr<const CycleIndex> cycles_;
};

/// T^n(y). O(1) with a cycle index, O(n) otherwise.
inline index_t apply_power(const FinitePermutation& T, index_t y, std::uint64_t n)
{
    T.require_in_range(y);
    if (T.has_cycle_index()) {
        const auto idx = T.cycle_index();
        const index_t c = idx->cycle_of[y];
        const std::uint64_t len = idx->cycle_length[c];
        const std::uint64_t offset = idx->cycle_offset[c];
        const std::uint64_t local = idx->position[y] - offset;
        return idx->order[offset + (local + n % len) % len];
    }
    for (std::uint64_t i = 0; i < n; ++i) y = T(y);
    return y;
}

struct Orbit {
    std::vector<index_t> points; // points[0] = y, T(points[i]) = points[i+1 mod p]
    std::uint64_t period = 0;
};

inline Orbit orbit_and_period(const FinitePermutation& T, index_t y)
{
    T.require_in_range(y);
    Orbit orbit;
    index_t z = y;
    do {
        orbit.points.push_back(z);
        z = T(z);
    } while (z != y);
    orbit.period = orbit.points.size();
    return orbit;
}

inline std::uint64_t period(const FinitePermutation& T, index_t y)
{
    T.require_in_range(y);
    const auto idx = T.cycle_index();
    return idx->cycle_length[idx->cycle_of[y]];
}

/// Cycles ordered by descending length, ties broken by smallest contained index;
/// each cycle starts at its smallest element.
inline std::vector<std::vector<index_t>> cycle_decomposition(const FinitePermutation& T)
{
    const auto idx = T.cycle_index();
    std::vector<std::size_t> ids(idx->cycle_count());
    for (std::size_t c = 0; c < ids.size(); ++c) ids[c] = c;
    // Cycle ids already follow the smallest-element order, so a stable sort handles ties.
    std::stable_sort(ids.begin(), ids.end(),
                     [&](std::size_t a, std::size_t b) { return idx->cycle_length[a] > idx->cycle_length[b]; });
    std::vector<std::vector<index_t>> out;
    out.reserve(ids.size());
    for (auto c : ids) {
        auto span = idx->cycle(c);
        out.emplace_back(span.begin(), span.end());
    }
    return out;
}

} // namespace ergodia
