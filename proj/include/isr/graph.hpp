#pragma once

#include "isr/errors.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace isr {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free set of vertex identifiers.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> vs) : members_(vs) { normalize(); }
    explicit VertexSet(std::vector<Vertex> vs) : members_(std::move(vs)) { normalize(); }

    static VertexSet from_sorted(std::vector<Vertex> vs)
    {
        VertexSet s;
        s.members_ = std::move(vs);
        return s;
    }

    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }
    [[nodiscard]] Vertex operator[](std::size_t i) const { return members_[i]; }
    [[nodiscard]] const std::vector<Vertex>& members() const noexcept { return members_; }

    [[nodiscard]] bool contains(Vertex v) const
    {
        return std::binary_search(members_.begin(), members_.end(), v);
    }

    [[nodiscard]] VertexSet with(Vertex v) const
    {
        VertexSet r = *this;
        auto it = std::lower_bound(r.members_.begin(), r.members_.end(), v);
        if (it == r.members_.end() || *it != v)
            r.members_.insert(it, v);
        return r;
    }

    [[nodiscard]] VertexSet without(Vertex v) const
    {
        VertexSet r = *this;
        auto it = std::lower_bound(r.members_.begin(), r.members_.end(), v);
        if (it != r.members_.end() && *it == v)
            r.members_.erase(it);
        return r;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet& a, const VertexSet& b)
    {
        return a.members_ <=> b.members_;
    }

private:
    void normalize()
    {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<Vertex> members_;
};

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b)
{
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet::from_sorted(std::move(out));
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b)
{
    std::vector<Vertex> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet::from_sorted(std::move(out));
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b)
{
    std::vector<Vertex> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet::from_sorted(std::move(out));
}

inline std::size_t intersection_size(const VertexSet& a, const VertexSet& b)
{
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

inline bool is_subset(const VertexSet& sub, const VertexSet& super)
{
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

/// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;

    /// Self-loops and out-of-range endpoints are rejected; repeated edges collapse.
    Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n)
    {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
                throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v)
                    + "} has an endpoint outside 0.." + std::to_string(static_cast<long>(n) - 1));
            if (u == v)
                throw InputError("self-loop on vertex " + std::to_string(u));
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& nbrs : adjacency_) {
            std::sort(nbrs.begin(), nbrs.end());
            nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
            edge_count_ += nbrs.size();
        }
        edge_count_ /= 2;
    }

    Graph(std::size_t n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size()))
    {
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }

    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    [[nodiscard]] std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

    [[nodiscard]] bool adjacent(Vertex u, Vertex v) const
    {
        const auto& a = adjacency_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    [[nodiscard]] bool valid(Vertex v) const noexcept
    {
        return v >= 0 && static_cast<std::size_t>(v) < adjacency_.size();
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    [[nodiscard]] std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (std::size_t u = 0; u < adjacency_.size(); ++u)
            for (Vertex v : adjacency_[u])
                if (static_cast<Vertex>(u) < v)
                    out.emplace_back(static_cast<Vertex>(u), v);
        return out;
    }

    [[nodiscard]] std::size_t max_degree() const
    {
        std::size_t d = 0;
        for (const auto& nbrs : adjacency_)
            d = std::max(d, nbrs.size());
        return d;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Induced subgraph on `keep`, relabelled densely; `to_original[i]` is the source id of vertex i.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_original;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep)
{
    std::vector<Vertex> local(g.vertex_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
        local[keep[i]] = static_cast<Vertex>(i);
    std::vector<Edge> edges;
    for (Vertex u : keep)
        for (Vertex v : g.neighbors(u))
            if (u < v && local[v] >= 0)
                edges.emplace_back(local[u], local[v]);
    return {Graph(keep.size(), edges), keep.members()};
}

inline void require_valid(const Graph& g, const VertexSet& s, const char* what = "vertex set")
{
    for (Vertex v : s)
        if (!g.valid(v))
            throw InputError(std::string(what) + " contains vertex " + std::to_string(v)
                + " outside 0.." + std::to_string(static_cast<long>(g.vertex_count()) - 1));
}

inline bool is_independent(const Graph& g, const VertexSet& s)
{
    require_valid(g, s);
    for (Vertex u : s)
        for (Vertex v : g.neighbors(u))
            if (v > u && s.contains(v))
                return false;
    return true;
}

/// Open neighborhood N(S): vertices adjacent to S that are not in S.
inline VertexSet neighborhood(const Graph& g, const VertexSet& s)
{
    std::vector<Vertex> out;
    for (Vertex u : s)
        for (Vertex v : g.neighbors(u))
            if (!s.contains(v))
                out.push_back(v);
    return VertexSet(std::move(out));
}

inline VertexSet closed_neighborhood(const Graph& g, const VertexSet& s)
{
    return set_union(s, neighborhood(g, s));
}

struct DegeneracyOrder {
    std::size_t degeneracy = 0;
    std::vector<Vertex> order;
};

/// Repeated minimum-degree removal; ties go to the smallest vertex id.
/// Every vertex has at most `degeneracy` neighbours later in `order`.
inline DegeneracyOrder degeneracy_order(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> deg(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = g.degree(static_cast<Vertex>(v));
        queue.emplace(deg[v], static_cast<Vertex>(v));
    }
    std::vector<char> removed(n, 0);
    DegeneracyOrder out;
    out.order.reserve(n);
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        removed[v] = 1;
        out.order.push_back(v);
        out.degeneracy = std::max(out.degeneracy, d);
        for (Vertex u : g.neighbors(v)) {
            if (removed[u])
                continue;
            queue.erase({deg[u], u});
            --deg[u];
            queue.emplace(deg[u], u);
        }
    }
    return out;
}

inline std::size_t degeneracy(const Graph& g) { return degeneracy_order(g).degeneracy; }

enum class Rule { slide, jump };

inline const char* to_string(Rule r) { return r == Rule::slide ? "slide" : "jump"; }

/// A reconfiguration problem (G, S, T, k, ell) with an optional modulator.
///
/// Construction validates everything: |S| = |T| = k, both independent, ids in
/// range. k = 0 is accepted because reductions can strip every token.
class Instance {
public:
    Instance(Graph g, VertexSet source, VertexSet target, std::size_t k, std::size_t ell,
        std::optional<VertexSet> modulator = std::nullopt)
        : graph_(std::move(g))
        , source_(std::move(source))
        , target_(std::move(target))
        , k_(k)
        , ell_(ell)
        , modulator_(std::move(modulator))
    {
        require_valid(graph_, source_, "source");
        require_valid(graph_, target_, "target");
        if (modulator_)
            require_valid(graph_, *modulator_, "modulator");
        if (source_.size() != k_ || target_.size() != k_)
            throw InputError("|S| = " + std::to_string(source_.size()) + " and |T| = "
                + std::to_string(target_.size()) + " must both equal k = " + std::to_string(k_));
        if (!is_independent(graph_, source_))
            throw InputError("source set is not independent");
        if (!is_independent(graph_, target_))
            throw InputError("target set is not independent");
    }

    [[nodiscard]] const Graph& graph() const noexcept { return graph_; }
    [[nodiscard]] const VertexSet& source() const noexcept { return source_; }
    [[nodiscard]] const VertexSet& target() const noexcept { return target_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t ell() const noexcept { return ell_; }
    [[nodiscard]] const std::optional<VertexSet>& modulator() const noexcept { return modulator_; }

    [[nodiscard]] Instance with_ell(std::size_t ell) const
    {
        Instance r = *this;
        r.ell_ = ell;
        return r;
    }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    Graph graph_;
    VertexSet source_;
    VertexSet target_;
    std::size_t k_;
    std::size_t ell_;
    std::optional<VertexSet> modulator_;
};

/// Ordered token configurations I_0..I_L; its length is L = steps.size() - 1.
struct ReconfigSequence {
    std::vector<VertexSet> steps;

    [[nodiscard]] std::size_t length() const noexcept { return steps.empty() ? 0 : steps.size() - 1; }

    friend bool operator==(const ReconfigSequence&, const ReconfigSequence&) = default;
};

/// Result of validate_sequence. On failure `step` is the index of the offending configuration.
struct SequenceCheck {
    bool ok = true;
    std::size_t step = 0;
    std::string message;

    explicit operator bool() const noexcept { return ok; }
};

enum class LengthBound { enforce, ignore };

inline SequenceCheck validate_sequence(const Instance& inst, const ReconfigSequence& seq, Rule rule,
    LengthBound bound = LengthBound::enforce)
{
    auto fail = [](std::size_t step, std::string msg) { return SequenceCheck{false, step, std::move(msg)}; };
    const Graph& g = inst.graph();
    if (seq.steps.empty())
        return fail(0, "empty sequence");
    if (seq.steps.front() != inst.source())
        return fail(0, "first configuration differs from S");
    if (seq.steps.back() != inst.target())
        return fail(seq.steps.size() - 1, "last configuration differs from T");
    if (bound == LengthBound::enforce && seq.length() > inst.ell())
        return fail(seq.steps.size() - 1,
            "length " + std::to_string(seq.length()) + " exceeds ell = " + std::to_string(inst.ell()));
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const VertexSet& cur = seq.steps[i];
        for (Vertex v : cur)
            if (!g.valid(v))
                return fail(i, "vertex " + std::to_string(v) + " out of range");
        if (cur.size() != inst.k())
            return fail(i, "configuration has " + std::to_string(cur.size()) + " tokens, expected "
                    + std::to_string(inst.k()));
        if (!is_independent(g, cur))
            return fail(i, "configuration is not independent");
        if (i == 0)
            continue;
        const VertexSet& prev = seq.steps[i - 1];
        VertexSet left = set_difference(prev, cur);
        VertexSet arrived = set_difference(cur, prev);
        if (left.size() != 1 || arrived.size() != 1)
            return fail(i, "consecutive configurations must differ in exactly one token");
        if (rule == Rule::slide && !g.adjacent(left[0], arrived[0]))
            return fail(i, "token moved " + std::to_string(left[0]) + " -> " + std::to_string(arrived[0])
                    + " along a non-edge");
    }
    return {};
}

} // namespace isr
