#pragma once

// Seeded random graphs and instances for tests and benchmarks. Only the
// portable helpers from random.hpp touch the engine, so outputs are stable
// across standard libraries.

#include "isr/gadgets.hpp"
#include "isr/graph.hpp"
#include "isr/random.hpp"

#include <optional>
#include <vector>

namespace isr {

inline void portable_shuffle(std::vector<Vertex>& v, Rng& rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

/// Each new vertex picks up to d distinct earlier neighbors, so the degeneracy is at most d.
inline Graph random_degenerate_graph(std::size_t n, std::size_t d, double edge_prob, Rng& rng)
{
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
        std::vector<Vertex> earlier(v);
        for (std::size_t u = 0; u < v; ++u)
            earlier[u] = static_cast<Vertex>(u);
        portable_shuffle(earlier, rng);
        std::size_t taken = 0;
        for (Vertex u : earlier) {
            if (taken == d)
                break;
            if (unit_interval(rng) < edge_prob) {
                edges.emplace_back(u, static_cast<Vertex>(v));
                ++taken;
            }
        }
    }
    return Graph(n, edges);
}

/// Random G(n, p) restricted so that vertices outside `m` keep degree at most delta inside H.
inline Graph random_bounded_degree_graph(std::size_t n, const VertexSet& m, std::size_t delta, double edge_prob,
    Rng& rng)
{
    std::vector<std::size_t> h_degree(n, 0);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            if (unit_interval(rng) >= edge_prob)
                continue;
            const bool in_h = !m.contains(static_cast<Vertex>(u)) && !m.contains(static_cast<Vertex>(v));
            if (in_h) {
                if (h_degree[u] == delta || h_degree[v] == delta)
                    continue;
                ++h_degree[u];
                ++h_degree[v];
            }
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    return Graph(n, edges);
}

/// Greedy independent set of size k over a random vertex order; nullopt if greedy stalls.
inline std::optional<VertexSet> random_independent_set(const Graph& g, std::size_t k, Rng& rng)
{
    std::vector<Vertex> order(g.vertex_count());
    for (std::size_t v = 0; v < order.size(); ++v)
        order[v] = static_cast<Vertex>(v);
    portable_shuffle(order, rng);
    std::vector<Vertex> picked;
    for (Vertex v : order) {
        if (picked.size() == k)
            break;
        bool free = true;
        for (Vertex u : picked)
            free = free && !g.adjacent(u, v);
        if (free)
            picked.push_back(v);
    }
    if (picked.size() < k)
        return std::nullopt;
    return VertexSet(std::move(picked));
}

/// Random instance on g with |S| = |T| = k, or nullopt after a few failed draws.
inline std::optional<Instance> random_instance(const Graph& g, std::size_t k, std::size_t ell, Rng& rng,
    std::optional<VertexSet> modulator = std::nullopt)
{
    for (int attempt = 0; attempt < 16; ++attempt) {
        auto s = random_independent_set(g, k, rng);
        auto t = random_independent_set(g, k, rng);
        if (s && t)
            return Instance(g, *s, *t, k, ell, std::move(modulator));
    }
    return std::nullopt;
}

struct PlantedColoredGraph {
    MulticoloredGraph graph;
    std::optional<VertexSet> clique; // a planted multicolored k-clique
};

/// n vertices colored round-robin with k colors, random edges between distinct colors,
/// optionally with a multicolored clique on vertices 0..k-1.
inline PlantedColoredGraph random_colored_graph(std::size_t n, std::size_t k, double edge_prob, bool plant, Rng& rng)
{
    std::vector<int> colors(n);
    for (std::size_t v = 0; v < n; ++v)
        colors[v] = static_cast<int>(v % k);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const bool forced = plant && u < k && v < k;
            if (colors[u] != colors[v] && (forced || unit_interval(rng) < edge_prob))
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    PlantedColoredGraph out{{Graph(n, edges), std::move(colors)}, std::nullopt};
    if (plant) {
        std::vector<Vertex> c(k);
        for (std::size_t i = 0; i < k; ++i)
            c[i] = static_cast<Vertex>(i);
        out.clique = VertexSet(std::move(c));
    }
    return out;
}

} // namespace isr
