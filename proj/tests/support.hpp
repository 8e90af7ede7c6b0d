#pragma once

// Test-side helpers: small graph families and brute-force oracles written
// independently of the library algorithms (plain subset enumeration and a
// one-directional BFS over std::set states).

#include "isr/graph.hpp"
#include "isr/covering.hpp"
#include "isr/random.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace isr::test {

inline Graph path_graph(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i)
        e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
    return Graph(n, e);
}

inline Graph cycle_graph(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
    return Graph(n, e);
}

inline Graph complete_graph(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return Graph(n, e);
}

inline Graph star_graph(std::size_t leaves)
{
    std::vector<Edge> e;
    for (std::size_t i = 1; i <= leaves; ++i)
        e.emplace_back(0, static_cast<Vertex>(i));
    return Graph(leaves + 1, e);
}

/// Graph number `code` on n vertices: bit i of code toggles the i-th pair (u < v) in lexicographic order.
inline Graph graph_from_code(std::size_t n, std::uint64_t code)
{
    std::vector<Edge> e;
    std::size_t bit = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v, ++bit)
            if ((code >> bit) & 1U)
                e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return Graph(n, e);
}

inline Graph random_graph(std::size_t n, double p, Rng& rng)
{
    std::vector<Edge> e;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (unit_interval(rng) < p)
                e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return Graph(n, e);
}

// Independent sets of the complement are cliques of g, so sparse g gives many
// jump-disconnected pairs.
inline Graph complement_graph(const Graph& g)
{
    std::vector<Edge> e;
    for (Vertex u = 0; u < static_cast<Vertex>(g.vertex_count()); ++u)
        for (Vertex v = u + 1; v < static_cast<Vertex>(g.vertex_count()); ++v)
            if (!g.adjacent(u, v))
                e.emplace_back(u, v);
    return Graph(g.vertex_count(), e);
}

inline VertexSet from_mask(std::uint64_t mask)
{
    std::vector<Vertex> v;
    for (Vertex i = 0; i < 64; ++i)
        if ((mask >> i) & 1U)
            v.push_back(i);
    return VertexSet::from_sorted(std::move(v));
}

inline bool brute_independent(const Graph& g, std::uint64_t mask)
{
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
        if ((mask >> u) & 1U)
            for (Vertex v : g.neighbors(static_cast<Vertex>(u)))
                if ((mask >> v) & 1U)
                    return false;
    return true;
}

/// All independent sets with at most k vertices (k = 0 means no bound), by subset enumeration.
inline std::vector<VertexSet> brute_independent_sets(const Graph& g, std::size_t k = 0)
{
    std::vector<VertexSet> out;
    const std::uint64_t all = std::uint64_t{1} << g.vertex_count();
    for (std::uint64_t mask = 0; mask < all; ++mask) {
        if (k && static_cast<std::size_t>(std::popcount(mask)) > k)
            continue;
        if (brute_independent(g, mask))
            out.push_back(from_mask(mask));
    }
    return out;
}

inline std::vector<VertexSet> brute_maximal_independent_sets(const Graph& g)
{
    std::vector<VertexSet> out;
    const std::size_t n = g.vertex_count();
    const std::uint64_t all = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < all; ++mask) {
        if (!brute_independent(g, mask))
            continue;
        bool maximal = true;
        for (std::size_t v = 0; v < n && maximal; ++v)
            if (!((mask >> v) & 1U) && brute_independent(g, mask | (std::uint64_t{1} << v)))
                maximal = false;
        if (maximal)
            out.push_back(from_mask(mask));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool brute_covers(const Graph& g, std::size_t k, const std::vector<VertexSet>& fam)
{
    for (const VertexSet& i : brute_independent_sets(g, k)) {
        bool held = false;
        for (const VertexSet& m : fam)
            held = held || is_subset(i, m);
        if (!held)
            return false;
    }
    return true;
}

/// Single-source BFS over configurations; moves checked with the definition directly.
inline std::optional<std::size_t> plain_bfs(const Graph& g, const VertexSet& s, const VertexSet& t, Rule rule)
{
    std::map<VertexSet, std::size_t> dist{{s, 0}};
    std::deque<VertexSet> queue{s};
    while (!queue.empty()) {
        VertexSet cur = queue.front();
        queue.pop_front();
        if (cur == t)
            return dist[cur];
        for (Vertex from : cur)
            for (Vertex to = 0; static_cast<std::size_t>(to) < g.vertex_count(); ++to) {
                if (cur.contains(to) || (rule == Rule::slide && !g.adjacent(from, to)))
                    continue;
                VertexSet next = cur.without(from).with(to);
                if (!is_independent(g, next) || dist.contains(next))
                    continue;
                dist[next] = dist[cur] + 1;
                queue.push_back(next);
            }
    }
    return std::nullopt;
}

} // namespace isr::test
