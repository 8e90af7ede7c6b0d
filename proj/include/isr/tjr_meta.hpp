#pragma once

// Token jumping reachability through a meta-graph on a covering family: two
// members are adjacent when they share at least k-1 vertices. S reaches T iff
// their meta-nodes are connected, provided the family really covers (G, k).

#include "isr/covering.hpp"
#include "isr/graph.hpp"
#include "isr/result.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

namespace isr {

struct MetaGraph {
    std::vector<VertexSet> nodes;
    std::vector<std::vector<std::size_t>> adjacency;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }

    [[nodiscard]] std::size_t edge_count() const
    {
        std::size_t e = 0;
        for (const auto& a : adjacency)
            e += a.size();
        return e / 2;
    }
};

inline MetaGraph build_meta(const CoveringFamily& fam, std::size_t k)
{
    MetaGraph meta{fam.sets, std::vector<std::vector<std::size_t>>(fam.sets.size())};
    const std::size_t need = k == 0 ? 0 : k - 1;
    for (std::size_t a = 0; a < fam.sets.size(); ++a)
        for (std::size_t b = a + 1; b < fam.sets.size(); ++b)
            if (intersection_size(fam.sets[a], fam.sets[b]) >= need) {
                meta.adjacency[a].push_back(b);
                meta.adjacency[b].push_back(a);
            }
    return meta;
}

/// Shortest meta-path from `from` to `to` as a list of node indices, if connected.
inline std::optional<std::vector<std::size_t>> meta_path(const MetaGraph& meta, std::size_t from, std::size_t to)
{
    if (from >= meta.size() || to >= meta.size())
        throw InputError("meta-graph node index out of range");
    std::vector<std::size_t> parent(meta.size(), meta.size());
    std::deque<std::size_t> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        if (cur == to)
            break;
        for (std::size_t nb : meta.adjacency[cur])
            if (parent[nb] == meta.size()) {
                parent[nb] = cur;
                queue.push_back(nb);
            }
    }
    if (parent[to] == meta.size())
        return std::nullopt;
    std::vector<std::size_t> path{to};
    while (path.back() != from)
        path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

inline bool reachable(const MetaGraph& meta, std::size_t s_idx, std::size_t t_idx)
{
    return meta_path(meta, s_idx, t_idx).has_value();
}

/// Walks a shortest meta-path. For each meta-edge (I, I') with current tokens X ⊆ I:
/// if X ⊆ I' nothing moves; otherwise pick Y ⊆ I ∩ I' of size k-1 containing
/// X ∩ I', jump the tokens of X outside Y ∪ {u} onto Y one by one (ascending ids),
/// then jump u onto I' \ Y. Every intermediate set lies inside I or I', so each
/// edge costs at most k jumps.
inline ReconfigSequence extract_jump_sequence(const MetaGraph& meta, const std::vector<std::size_t>& path,
    const VertexSet& s, const VertexSet& t, std::size_t k)
{
    if (path.empty())
        throw InputError("empty meta-path");
    if (!is_subset(s, meta.nodes[path.front()]) || !is_subset(t, meta.nodes[path.back()]))
        throw InputError("meta-path endpoints do not contain S and T");
    ReconfigSequence seq{{s}};
    VertexSet x = s;
    for (std::size_t step = 0; step + 1 < path.size(); ++step) {
        const VertexSet& here = meta.nodes[path[step]];
        const VertexSet& next = meta.nodes[path[step + 1]];
        if (is_subset(x, next))
            continue;
        const VertexSet shared = set_intersection(here, next);
        if (k > 0 && shared.size() + 1 < k)
            throw InputError("meta-path uses a non-edge");
        // Y: keep tokens already in the next member, fill up from the shared part.
        VertexSet y = set_intersection(x, next);
        for (Vertex v : shared) {
            if (y.size() + 1 >= k)
                break;
            y = y.with(v);
        }
        const VertexSet leaving = set_difference(x, y);
        const Vertex crossing = leaving[leaving.size() - 1];
        const VertexSet arrivals = set_difference(y, x);
        std::size_t a = 0;
        for (Vertex from : leaving) {
            if (from == crossing)
                continue;
            x = x.without(from).with(arrivals[a++]);
            seq.steps.push_back(x);
        }
        const VertexSet landing = set_difference(next, y);
        Vertex to = landing[0];
        if (step + 2 == path.size()) {
            // Final edge lands exactly on T.
            to = set_difference(t, y)[0];
        }
        x = x.without(crossing).with(to);
        seq.steps.push_back(x);
    }
    if (x != t) {
        // Last member may be larger than T: rearrange inside it.
        const VertexSet extra = set_difference(x, t);
        const VertexSet missing = set_difference(t, x);
        for (std::size_t i = 0; i < extra.size(); ++i) {
            x = x.without(extra[i]).with(missing[i]);
            seq.steps.push_back(x);
        }
    }
    return seq;
}

struct TjrOptions {
    /// Whether fam is known to cover (G, k); a "no" is only trustworthy when it is.
    bool family_verified = true;
};

/// Token jumping reachability. ell is ignored.
inline SolveResult solve_tjr(const Instance& inst, const CoveringFamily& fam, const TjrOptions& opt = {})
{
    SolveResult result;
    const VertexSet& s = inst.source();
    const VertexSet& t = inst.target();
    if (!opt.family_verified)
        result.warning = "covering family not verified; a no answer may be wrong";
    if (s == t) {
        result.answer = Answer::yes;
        result.sequence = ReconfigSequence{{s}};
        return result;
    }
    CoveringFamily members = fam;
    members.add_endpoints(s, t);
    members = prune_small(std::move(members), inst.k());
    for (const auto& m : members.sets)
        if (!is_independent(inst.graph(), m))
            throw InputError("covering family contains a dependent set");
    result.stats.family_size = members.size();

    const MetaGraph meta = build_meta(members, inst.k());
    auto index_of = [&](const VertexSet& v) {
        return static_cast<std::size_t>(
            std::lower_bound(members.sets.begin(), members.sets.end(), v) - members.sets.begin());
    };
    auto path = meta_path(meta, index_of(s), index_of(t));
    result.stats.nodes_expanded = meta.size();
    if (!path) {
        result.answer = Answer::no;
        return result;
    }
    result.stats.meta_path_length = path->size() - 1;
    ReconfigSequence seq = extract_jump_sequence(meta, *path, s, t, inst.k());
    if (auto check = validate_sequence(inst, seq, Rule::jump, LengthBound::ignore); !check)
        throw InternalError("meta-graph witness rejected: " + check.message);
    result.answer = Answer::yes;
    result.sequence = std::move(seq);
    return result;
}

} // namespace isr
