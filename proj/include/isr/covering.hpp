#pragma once

// Independence covering families: families of independent sets such that every
// independent set of size at most k lies inside some member.

#include "isr/graph.hpp"
#include "isr/random.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

namespace isr {

struct CoveringFamily {
    std::vector<VertexSet> sets;
    std::size_t k = 0;

    /// Sorts and deduplicates the members.
    void normalize()
    {
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    }

    /// Appends S and T of an instance, as every solver expects them present.
    void add_endpoints(const VertexSet& s, const VertexSet& t)
    {
        sets.push_back(s);
        sets.push_back(t);
        normalize();
    }

    [[nodiscard]] std::size_t size() const noexcept { return sets.size(); }

    friend bool operator==(const CoveringFamily&, const CoveringFamily&) = default;
};

inline constexpr std::size_t default_family_cap = 1'000'000;
inline constexpr std::size_t default_enumeration_cap = 1'000'000;

namespace detail {

using Bits = boost::dynamic_bitset<>;

inline std::vector<Bits> non_adjacency(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<Bits> out(n, Bits(n));
    for (std::size_t v = 0; v < n; ++v) {
        out[v].set();
        out[v].reset(v);
        for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
            out[v].reset(static_cast<std::size_t>(u));
    }
    return out;
}

inline VertexSet to_vertex_set(const Bits& b)
{
    std::vector<Vertex> vs;
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i))
        vs.push_back(static_cast<Vertex>(i));
    return VertexSet::from_sorted(std::move(vs));
}

// Bron-Kerbosch with Tomita pivoting on the complement graph: maximal cliques
// of the complement are exactly the maximal independent sets.
inline void bron_kerbosch(const std::vector<Bits>& nonadj, Bits& r, Bits p, Bits x, std::vector<VertexSet>& out,
    std::size_t cap)
{
    if (p.none() && x.none()) {
        if (out.size() >= cap)
            throw ResourceError("maximal independent set cap of " + std::to_string(cap) + " exceeded");
        out.push_back(to_vertex_set(r));
        return;
    }
    Bits px = p | x;
    std::size_t pivot = px.find_first();
    std::size_t best = (p & nonadj[pivot]).count();
    for (auto u = px.find_next(pivot); u != Bits::npos; u = px.find_next(u)) {
        std::size_t c = (p & nonadj[u]).count();
        if (c > best) {
            best = c;
            pivot = u;
        }
    }
    Bits candidates = p - nonadj[pivot];
    for (auto v = candidates.find_first(); v != Bits::npos; v = candidates.find_next(v)) {
        r.set(v);
        bron_kerbosch(nonadj, r, p & nonadj[v], x & nonadj[v], out, cap);
        r.reset(v);
        p.reset(v);
        x.set(v);
    }
}

} // namespace detail

/// All maximal independent sets of g. Covers every independent set, for any k.
inline CoveringFamily exact_family(const Graph& g, std::size_t k, std::size_t cap = default_family_cap)
{
    const std::size_t n = g.vertex_count();
    CoveringFamily fam{{}, k};
    auto nonadj = detail::non_adjacency(g);
    detail::Bits r(n), p(n), x(n);
    p.set();
    detail::bron_kerbosch(nonadj, r, p, x, fam.sets, cap);
    fam.normalize();
    return fam;
}

/// One sampling round: mark each vertex with probability 1/(k(d+1)), then drop
/// every marked vertex that has a marked neighbour later in the degeneracy order.
inline VertexSet sample_independent_set(const Graph& g, const DegeneracyOrder& order, std::size_t k, std::size_t d,
    std::uint64_t round_seed)
{
    const std::size_t n = g.vertex_count();
    const double p = 1.0 / (static_cast<double>(std::max<std::size_t>(k, 1)) * static_cast<double>(d + 1));
    Rng rng(round_seed);
    std::vector<char> marked(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        marked[v] = unit_interval(rng) < p ? 1 : 0;
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < order.order.size(); ++i)
        position[order.order[i]] = i;
    std::vector<Vertex> kept;
    for (std::size_t v = 0; v < n; ++v) {
        if (!marked[v])
            continue;
        bool conflict = false;
        for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
            if (marked[u] && position[u] > position[v]) {
                conflict = true;
                break;
            }
        if (!conflict)
            kept.push_back(static_cast<Vertex>(v));
    }
    return VertexSet::from_sorted(std::move(kept));
}

struct SamplingOptions {
    std::size_t first_round = 0;
    std::size_t threads = 1;
};

/// Distinct sets from `rounds` independent sampling rounds. Round r uses a seed
/// derived from (seed, r), so the family does not depend on the thread count.
inline CoveringFamily sampled_family(const Graph& g, std::size_t k, std::size_t d, std::size_t rounds,
    std::uint64_t seed, SamplingOptions opt = {})
{
    CoveringFamily fam{{}, k};
    if (rounds == 0)
        return fam;
    const DegeneracyOrder order = degeneracy_order(g);
    const std::size_t workers = std::clamp<std::size_t>(opt.threads, 1, rounds);
    std::vector<std::vector<VertexSet>> partial(workers);
    auto work = [&](std::size_t w) {
        for (std::size_t r = w; r < rounds; r += workers)
            partial[w].push_back(sample_independent_set(g, order, k, d, derive_seed(seed, opt.first_round + r)));
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
    }
    for (auto& part : partial)
        fam.sets.insert(fam.sets.end(), part.begin(), part.end());
    fam.normalize();
    return fam;
}

/// Outcome of verify_cover: nullopt when covering, else a smallest uncovered independent set.
struct CoverCheck {
    std::optional<VertexSet> missing;
    std::size_t enumerated = 0;

    [[nodiscard]] bool ok() const noexcept { return !missing.has_value(); }
};

/// Checks that every independent set of size <= k is inside some member of fam.
/// Enumerates independent sets depth-first, carrying the members that still
/// contain the partial set; an empty member list marks an uncovered set.
inline CoverCheck verify_cover(const Graph& g, std::size_t k, const CoveringFamily& fam,
    std::size_t cap = default_enumeration_cap)
{
    const std::size_t n = g.vertex_count();
    std::vector<detail::Bits> member(fam.sets.size(), detail::Bits(n));
    for (std::size_t i = 0; i < fam.sets.size(); ++i) {
        require_valid(g, fam.sets[i], "family member");
        if (!is_independent(g, fam.sets[i]))
            throw InputError("family member " + std::to_string(i) + " is not independent");
        for (Vertex v : fam.sets[i])
            member[i].set(static_cast<std::size_t>(v));
    }

    CoverCheck result;
    std::vector<Vertex> current;
    std::vector<int> blocked(n, 0);

    auto enumerate = [&](auto&& self, Vertex start, const std::vector<std::size_t>& holders) -> void {
        if (++result.enumerated > cap)
            throw ResourceError("independent set enumeration cap of " + std::to_string(cap) + " exceeded");
        if (holders.empty()) {
            if (!result.missing || current.size() < result.missing->size())
                result.missing = VertexSet::from_sorted(current);
            return;
        }
        if (current.size() >= k)
            return;
        if (result.missing && current.size() + 1 >= result.missing->size())
            return;
        for (Vertex v = start; static_cast<std::size_t>(v) < n; ++v) {
            if (blocked[v])
                continue;
            std::vector<std::size_t> next;
            for (std::size_t h : holders)
                if (member[h].test(static_cast<std::size_t>(v)))
                    next.push_back(h);
            current.push_back(v);
            for (Vertex u : g.neighbors(v))
                ++blocked[u];
            self(self, v + 1, next);
            for (Vertex u : g.neighbors(v))
                --blocked[u];
            current.pop_back();
        }
    };

    std::vector<std::size_t> all(fam.sets.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    enumerate(enumerate, 0, all);
    return result;
}

/// Sample-then-verify: doubles the number of rounds until verify_cover passes.
struct VerifiedSampling {
    CoveringFamily family;
    std::size_t rounds = 0;
};

inline VerifiedSampling sampled_family_verified(const Graph& g, std::size_t k, std::size_t d, std::uint64_t seed,
    std::size_t max_rounds = std::size_t{1} << 24, SamplingOptions opt = {})
{
    VerifiedSampling out{{{}, k}, 0};
    std::size_t batch = 64;
    while (true) {
        SamplingOptions o = opt;
        o.first_round = out.rounds;
        CoveringFamily more = sampled_family(g, k, d, batch, seed, o);
        out.family.sets.insert(out.family.sets.end(), more.sets.begin(), more.sets.end());
        out.family.normalize();
        out.rounds += batch;
        if (verify_cover(g, k, out.family).ok())
            return out;
        if (out.rounds >= max_rounds)
            throw ResourceError("sampled family failed to cover after " + std::to_string(out.rounds) + " rounds");
        batch = out.rounds;
    }
}

/// How the family on the degenerate part of a modulator graph is built.
struct InnerFamily {
    enum class Kind { exact, sampled, sampled_verified };
    Kind kind = Kind::exact;
    std::size_t rounds = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

inline CoveringFamily build_inner_family(const Graph& g, std::size_t k, std::size_t d, const InnerFamily& inner,
    std::uint64_t seed)
{
    switch (inner.kind) {
    case InnerFamily::Kind::exact:
        return exact_family(g, k);
    case InnerFamily::Kind::sampled:
        return sampled_family(g, k, d, inner.rounds, seed, {0, inner.threads});
    case InnerFamily::Kind::sampled_verified:
        return sampled_family_verified(g, k, d, seed, std::size_t{1} << 24, {0, inner.threads}).family;
    }
    throw InternalError("unknown inner family kind");
}

/// Covering family for a graph whose deletion of `modulator` leaves a
/// d-degenerate graph. For each independent A inside the modulator, an inner
/// family on (V minus modulator) minus N[A] is built and each member joined with A.
inline CoveringFamily modulator_family(const Graph& g, const VertexSet& modulator, std::size_t k, std::size_t d,
    const InnerFamily& inner)
{
    require_valid(g, modulator, "modulator");
    if (modulator.size() > 30)
        throw InputError("modulator of size " + std::to_string(modulator.size()) + " is too large to enumerate");
    std::vector<Vertex> rest_list;
    for (Vertex v = 0; static_cast<std::size_t>(v) < g.vertex_count(); ++v)
        if (!modulator.contains(v))
            rest_list.push_back(v);
    const VertexSet rest = VertexSet::from_sorted(rest_list);
    if (degeneracy(induced_subgraph(g, rest).graph) > d)
        throw InputError("graph minus the modulator is not " + std::to_string(d) + "-degenerate");

    CoveringFamily fam{{}, k};
    const std::uint64_t subsets = std::uint64_t{1} << modulator.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::vector<Vertex> chosen;
        for (std::size_t i = 0; i < modulator.size(); ++i)
            if (mask >> i & 1U)
                chosen.push_back(modulator[i]);
        const VertexSet a = VertexSet::from_sorted(std::move(chosen));
        if (!is_independent(g, a))
            continue;
        const VertexSet remaining = set_difference(rest, closed_neighborhood(g, a));
        const InducedSubgraph part = induced_subgraph(g, remaining);
        const std::size_t inner_k = a.size() >= k ? 1 : k - a.size();
        const std::uint64_t seed = mask == 0 ? inner.seed : derive_seed(inner.seed, mask);
        const CoveringFamily local = build_inner_family(part.graph, inner_k, d, inner, seed);
        for (const VertexSet& member : local.sets) {
            std::vector<Vertex> joined(a.begin(), a.end());
            for (Vertex v : member)
                joined.push_back(part.to_original[v]);
            fam.sets.emplace_back(std::move(joined));
        }
    }
    fam.normalize();
    return fam;
}

/// Drops members with fewer than k vertices and deduplicates.
inline CoveringFamily prune_small(CoveringFamily fam, std::size_t k)
{
    std::erase_if(fam.sets, [k](const VertexSet& s) { return s.size() < k; });
    fam.normalize();
    return fam;
}

} // namespace isr
