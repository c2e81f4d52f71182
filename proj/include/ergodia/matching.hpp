#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace ergodia {

/// Neighborhoods of left vertices in CSR form; targets are 0..targets-1.
struct BipartiteGraph {
    std::size_t sources = 0;
    std::size_t targets = 0;
    std::vector<std::size_t> offset{0}; // size sources+1
    std::vector<std::uint32_t> adjacency;

    void add_source(std::span<const std::uint32_t> neighbors)
    {
        for (auto v : neighbors) {
            if (v >= targets) throw std::out_of_range("neighbor outside the target set");
            adjacency.push_back(v);
        }
        offset.push_back(adjacency.size());
        ++sources;
    }

    [[nodiscard]] std::span<const std::uint32_t> neighbors(std::size_t u) const
    {
        return std::span<const std::uint32_t>(adjacency).subspan(offset[u], offset[u + 1] - offset[u]);
    }
};

/// Cyclic interval of targets {lo, lo+1, ..., lo+len-1} mod targets.
struct Arc {
    std::uint32_t lo = 0;
    std::uint32_t len = 0;
};

inline BipartiteGraph arc_graph(std::span<const Arc> arcs, std::size_t targets)
{
    BipartiteGraph g;
    g.targets = targets;
    std::vector<std::uint32_t> nb;
    for (const Arc& a : arcs) {
        if (a.len > targets) throw std::invalid_argument("arc longer than the target circle");
        nb.resize(a.len);
        for (std::uint32_t i = 0; i < a.len; ++i) nb[i] = static_cast<std::uint32_t>((a.lo + static_cast<std::uint64_t>(i)) % targets);
        g.add_source(nb);
    }
    return g;
}

inline constexpr std::uint32_t unmatched = std::numeric_limits<std::uint32_t>::max();

struct Matching {
    std::vector<std::uint32_t> target_of; // per source, or `unmatched`
    std::vector<std::uint32_t> source_of; // per target, or `unmatched`
    std::size_t size = 0;
};

/// Maximum matching by Hopcroft-Karp, optionally warm-started from a partial matching.
/// DFS is iterative so long augmenting paths do not exhaust the stack.
inline Matching maximum_matching(const BipartiteGraph& g, Matching start = {})
{
    constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
    Matching m = std::move(start);
    if (m.target_of.empty()) {
        m.target_of.assign(g.sources, unmatched);
        m.source_of.assign(g.targets, unmatched);
        m.size = 0;
    }
    if (m.target_of.size() != g.sources || m.source_of.size() != g.targets)
        throw std::invalid_argument("warm start does not fit the graph");

    std::vector<std::uint32_t> dist(g.sources);
    std::vector<std::size_t> it(g.sources);
    std::vector<std::uint32_t> queue;
    std::vector<std::uint32_t> stack;

    for (;;) {
        // BFS layers from free sources
        queue.clear();
        for (std::uint32_t u = 0; u < g.sources; ++u) {
            if (m.target_of[u] == unmatched) {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = inf;
            }
        }
        bool found = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto u = queue[head];
            for (auto v : g.neighbors(u)) {
                const auto w = m.source_of[v];
                if (w == unmatched)
                    found = true;
                else if (dist[w] == inf) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if (!found) break;

        for (std::uint32_t u = 0; u < g.sources; ++u) it[u] = g.offset[u];
        for (std::uint32_t root = 0; root < g.sources; ++root) {
            if (m.target_of[root] != unmatched) continue;
            stack.assign(1, root);
            while (!stack.empty()) {
                const auto u = stack.back();
                if (it[u] == g.offset[u + 1]) {
                    dist[u] = inf;
                    stack.pop_back();
                    if (!stack.empty()) ++it[stack.back()];
                    continue;
                }
                const auto v = g.adjacency[it[u]];
                const auto w = m.source_of[v];
                if (w == unmatched) {
                    // augment along the stack
                    for (auto x : stack) {
                        const auto tv = g.adjacency[it[x]];
                        m.target_of[x] = tv;
                        m.source_of[tv] = x;
                    }
                    ++m.size;
                    for (auto x : stack) dist[x] = inf;
                    stack.clear();
                } else if (dist[w] != inf && dist[w] == dist[u] + 1) {
                    stack.push_back(w);
                } else {
                    ++it[u];
                }
            }
        }
    }
    return m;
}

/// Greedy pass for interval neighborhoods: sweep targets left to right and give each
/// target to the waiting source whose interval closes first. Exact for non-wrapping
/// intervals; arcs through the seam are left to the augmenting phase.
inline Matching greedy_interval_matching(std::span<const Arc> arcs, std::size_t targets)
{
    Matching m;
    m.target_of.assign(arcs.size(), unmatched);
    m.source_of.assign(targets, unmatched);
    std::vector<std::uint32_t> by_start;
    for (std::uint32_t u = 0; u < arcs.size(); ++u)
        if (arcs[u].len > 0 && static_cast<std::uint64_t>(arcs[u].lo) + arcs[u].len <= targets) by_start.push_back(u);
    std::sort(by_start.begin(), by_start.end(), [&](auto a, auto b) { return arcs[a].lo < arcs[b].lo; });

    using Entry = std::pair<std::uint64_t, std::uint32_t>; // (last target, source)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::size_t next = 0;
    for (std::uint64_t t = 0; t < targets; ++t) {
        while (next < by_start.size() && arcs[by_start[next]].lo <= t) {
            const auto u = by_start[next++];
            open.emplace(static_cast<std::uint64_t>(arcs[u].lo) + arcs[u].len - 1, u);
        }
        while (!open.empty() && open.top().first < t) open.pop();
        if (open.empty()) continue;
        const auto u = open.top().second;
        open.pop();
        m.target_of[u] = static_cast<std::uint32_t>(t);
        m.source_of[t] = u;
        ++m.size;
    }
    return m;
}

/// Maximum matching for arc neighborhoods: greedy start, augmenting completion.
inline Matching interval_matching(std::span<const Arc> arcs, std::size_t targets)
{
    return maximum_matching(arc_graph(arcs, targets), greedy_interval_matching(arcs, targets));
}

} // namespace ergodia
