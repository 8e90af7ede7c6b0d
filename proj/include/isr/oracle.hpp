#pragma once

// Exact breadth-first search over token configurations. Ground truth for the
// parameterized solvers; kept deliberately plain.

#include "isr/graph.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

namespace isr {

struct OracleOptions {
    std::size_t node_cap = 10'000'000;
    /// Stop once every sequence of at most this many moves has been ruled out.
    std::optional<std::size_t> max_depth;
};

struct OracleStats {
    std::size_t nodes_expanded = 0;
};

namespace detail {

using Config = std::vector<Vertex>;

struct ConfigHash {
    std::size_t operator()(const Config& c) const noexcept { return boost::hash_range(c.begin(), c.end()); }
};

/// Calls `emit(next)` for every configuration one move away from `config`.
template <class Emit>
void for_each_move(const Graph& g, const Config& config, Rule rule, std::vector<int>& blocked, Emit&& emit)
{
    // blocked[v] = number of tokens adjacent to v
    for (Vertex t : config)
        for (Vertex u : g.neighbors(t))
            ++blocked[u];
    auto occupied = [&](Vertex v) { return std::binary_search(config.begin(), config.end(), v); };
    Config next;
    for (std::size_t i = 0; i < config.size(); ++i) {
        const Vertex from = config[i];
        auto try_target = [&](Vertex to) {
            if (occupied(to))
                return;
            int conflicts = blocked[to] - (g.adjacent(from, to) ? 1 : 0);
            if (conflicts != 0)
                return;
            next = config;
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
            next.insert(std::lower_bound(next.begin(), next.end(), to), to);
            emit(next);
        };
        if (rule == Rule::slide) {
            for (Vertex to : g.neighbors(from))
                try_target(to);
        } else {
            for (Vertex to = 0; static_cast<std::size_t>(to) < g.vertex_count(); ++to)
                try_target(to);
        }
    }
    for (Vertex t : config)
        for (Vertex u : g.neighbors(t))
            --blocked[u];
}

struct SearchSide {
    std::unordered_map<Config, std::pair<Config, std::size_t>, ConfigHash> visited; // config -> (parent, depth)
    std::vector<Config> layer;
    std::size_t depth = 0;
};

struct Meeting {
    Config node;
    std::size_t distance;
};

/// Bidirectional BFS; returns the meeting configuration on a shortest path.
inline std::optional<Meeting> bidirectional_search(
    const Instance& inst, Rule rule, const OracleOptions& opt, OracleStats* stats, SearchSide& fwd, SearchSide& bwd)
{
    const Graph& g = inst.graph();
    const Config s = inst.source().members();
    const Config t = inst.target().members();
    fwd.visited.emplace(s, std::make_pair(s, 0));
    fwd.layer = {s};
    bwd.visited.emplace(t, std::make_pair(t, 0));
    bwd.layer = {t};
    if (s == t)
        return Meeting{s, 0};

    std::vector<int> blocked(g.vertex_count(), 0);
    std::size_t expanded = 0;
    while (!fwd.layer.empty() && !bwd.layer.empty()) {
        if (opt.max_depth && fwd.depth + bwd.depth >= *opt.max_depth)
            break;
        SearchSide& side = fwd.layer.size() <= bwd.layer.size() ? fwd : bwd;
        SearchSide& other = &side == &fwd ? bwd : fwd;
        std::optional<Meeting> best;
        std::vector<Config> next_layer;
        for (const Config& cur : side.layer) {
            ++expanded;
            for_each_move(g, cur, rule, blocked, [&](const Config& nb) {
                if (side.visited.contains(nb))
                    return;
                side.visited.emplace(nb, std::make_pair(cur, side.depth + 1));
                if (side.visited.size() + other.visited.size() > opt.node_cap)
                    throw ResourceError("oracle node cap of " + std::to_string(opt.node_cap) + " exceeded");
                next_layer.push_back(nb);
                if (auto it = other.visited.find(nb); it != other.visited.end()) {
                    std::size_t d = side.depth + 1 + it->second.second;
                    if (!best || d < best->distance)
                        best = Meeting{nb, d};
                }
            });
        }
        side.layer = std::move(next_layer);
        ++side.depth;
        if (best) {
            if (stats)
                stats->nodes_expanded = expanded;
            return best;
        }
    }
    if (stats)
        stats->nodes_expanded = expanded;
    return std::nullopt;
}

} // namespace detail

/// Exact minimum number of moves from S to T, or nullopt when T is unreachable
/// (or farther than opt.max_depth).
inline std::optional<std::size_t> bfs_distance(
    const Instance& inst, Rule rule, const OracleOptions& opt = {}, OracleStats* stats = nullptr)
{
    detail::SearchSide fwd, bwd;
    auto meet = detail::bidirectional_search(inst, rule, opt, stats, fwd, bwd);
    if (!meet)
        return std::nullopt;
    return meet->distance;
}

/// A shortest reconfiguration sequence, or nullopt when none exists within the bound.
inline std::optional<ReconfigSequence> bfs_witness(
    const Instance& inst, Rule rule, const OracleOptions& opt = {}, OracleStats* stats = nullptr)
{
    detail::SearchSide fwd, bwd;
    auto meet = detail::bidirectional_search(inst, rule, opt, stats, fwd, bwd);
    if (!meet)
        return std::nullopt;

    std::vector<VertexSet> head;
    for (detail::Config c = meet->node;;) {
        head.push_back(VertexSet::from_sorted(c));
        const auto& [parent, depth] = fwd.visited.at(c);
        if (depth == 0)
            break;
        c = parent;
    }
    std::reverse(head.begin(), head.end());
    for (detail::Config c = meet->node;;) {
        const auto& [parent, depth] = bwd.visited.at(c);
        if (depth == 0)
            break;
        c = parent;
        head.push_back(VertexSet::from_sorted(c));
    }
    return ReconfigSequence{std::move(head)};
}

} // namespace isr
