#pragma once

// Random separation for TSO/TJO when V(G) splits into a modulator M and a part
// H of bounded degree. A coloring of H guesses which vertices are touched; the
// instance is then shrunk to small red components hanging off the guessed
// touched modulator vertices M', equivalent components are pruned, and the
// remainder is searched exhaustively.

#include "isr/errors.hpp"
#include "isr/graph.hpp"
#include "isr/oracle.hpp"
#include "isr/random.hpp"
#include "isr/result.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace isr {

enum class Color : std::uint8_t { red, blue };

/// Colors of H = V(G) \ M; colors[i] belongs to domain[i].
struct Coloring {
    VertexSet domain;
    std::vector<Color> colors;

    [[nodiscard]] Color at(Vertex v) const
    {
        auto it = std::lower_bound(domain.begin(), domain.end(), v);
        if (it == domain.end() || *it != v)
            throw InputError("vertex " + std::to_string(v) + " is not colored");
        return colors[static_cast<std::size_t>(it - domain.begin())];
    }

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

inline VertexSet complement(const Graph& g, const VertexSet& m)
{
    std::vector<Vertex> out;
    for (Vertex v = 0; static_cast<std::size_t>(v) < g.vertex_count(); ++v)
        if (!m.contains(v))
            out.push_back(v);
    return VertexSet::from_sorted(std::move(out));
}

/// One fair coin per vertex of H, in increasing vertex order.
inline Coloring color_h(const Graph& g, const VertexSet& m, std::uint64_t seed)
{
    require_valid(g, m, "modulator");
    Coloring chi{complement(g, m), {}};
    Rng rng(seed);
    chi.colors.reserve(chi.domain.size());
    for (std::size_t i = 0; i < chi.domain.size(); ++i)
        chi.colors.push_back(fair_coin(rng) ? Color::red : Color::blue);
    return chi;
}

/// Coloring number `mask` of H: bit i set means domain[i] is red.
inline Coloring coloring_from_mask(const Graph& g, const VertexSet& m, std::uint64_t mask)
{
    Coloring chi{complement(g, m), {}};
    for (std::size_t i = 0; i < chi.domain.size(); ++i)
        chi.colors.push_back((mask >> i) & 1U ? Color::red : Color::blue);
    return chi;
}

/// Maximum degree of G[H].
inline std::size_t max_degree_in_h(const Graph& g, const VertexSet& m)
{
    std::size_t delta = 0;
    for (Vertex v = 0; static_cast<std::size_t>(v) < g.vertex_count(); ++v) {
        if (m.contains(v))
            continue;
        std::size_t d = 0;
        for (Vertex u : g.neighbors(v))
            d += m.contains(u) ? 0 : 1;
        delta = std::max(delta, d);
    }
    return delta;
}

/// A smaller instance plus what is needed to lift its sequences back.
/// Tokens on `frozen` never move and stay outside the reduced graph.
struct ReducedInstance {
    Instance instance; // modulator holds M' in local ids
    std::vector<Vertex> to_original;
    VertexSet frozen;
};

namespace detail {

inline ReducedInstance restrict_instance(const Instance& inst, const VertexSet& keep, const VertexSet& modulator,
    const VertexSet& frozen)
{
    InducedSubgraph sub = induced_subgraph(inst.graph(), keep);
    auto local_of = [&](const VertexSet& s) {
        std::vector<Vertex> out;
        for (Vertex v : s) {
            auto it = std::lower_bound(keep.begin(), keep.end(), v);
            if (it != keep.end() && *it == v)
                out.push_back(static_cast<Vertex>(it - keep.begin()));
        }
        return VertexSet::from_sorted(std::move(out));
    };
    VertexSet s = local_of(inst.source());
    VertexSet t = local_of(inst.target());
    const std::size_t k = s.size();
    return {Instance(std::move(sub.graph), std::move(s), std::move(t), k, inst.ell(), local_of(modulator)),
        std::move(sub.to_original), frozen};
}

} // namespace detail

/// Applies the deletion rules for the guess M' and coloring chi. Returns nullopt
/// when a vertex of S xor T would be deleted, i.e. chi or M' cannot be successful.
///
/// Besides the five listed rules, untouched modulator vertices outside S ∩ T are
/// deleted too: they never hold a token, and keeping them would glue red
/// components together through M \ M'.
inline std::optional<ReducedInstance> reduce_instance(const Instance& inst, const VertexSet& m_prime,
    const Coloring& chi)
{
    if (!inst.modulator())
        throw InputError("random separation needs a modulator");
    const Graph& g = inst.graph();
    const VertexSet& m = *inst.modulator();
    if (!is_subset(m_prime, m))
        throw InputError("guessed set M' is not inside the modulator");
    const std::size_t n = g.vertex_count();
    const std::size_t two_ell = 2 * inst.ell();

    enum class Tag : std::uint8_t { modulator, red, blue };
    std::vector<Tag> tag(n, Tag::modulator);
    for (std::size_t i = 0; i < chi.domain.size(); ++i)
        tag[chi.domain[i]] = chi.colors[i] == Color::red ? Tag::red : Tag::blue;
    for (Vertex v = 0; static_cast<std::size_t>(v) < n; ++v)
        if (m.contains(v) != (tag[v] == Tag::modulator))
            throw InputError("coloring domain is not V(G) minus the modulator");

    // sizes of red components of G[H_R]
    std::vector<std::size_t> comp_size(n, 0);
    std::vector<char> seen(n, 0);
    for (Vertex v = 0; static_cast<std::size_t>(v) < n; ++v) {
        if (tag[v] != Tag::red || seen[v])
            continue;
        std::vector<Vertex> comp{v};
        seen[v] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex u : g.neighbors(comp[i]))
                if (tag[u] == Tag::red && !seen[u]) {
                    seen[u] = 1;
                    comp.push_back(u);
                }
        for (Vertex u : comp)
            comp_size[u] = comp.size();
    }
    auto oversized = [&](Vertex v) { return tag[v] == Tag::red && comp_size[v] > two_ell; };
    auto untouched_modulator = [&](Vertex v) { return tag[v] == Tag::modulator && !m_prime.contains(v); };

    const VertexSet both = set_intersection(inst.source(), inst.target());
    std::vector<char> removed(n, 0);
    std::vector<Vertex> frozen;
    for (Vertex v = 0; static_cast<std::size_t>(v) < n; ++v) {
        if (both.contains(v)) {
            if (tag[v] == Tag::blue || untouched_modulator(v) || oversized(v)) {
                frozen.push_back(v);
                removed[v] = 1;
                for (Vertex u : g.neighbors(v))
                    removed[u] = 1;
            }
        } else if (tag[v] == Tag::blue || oversized(v) || untouched_modulator(v)) {
            removed[v] = 1;
        }
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; static_cast<std::size_t>(v) < n; ++v) {
        if (!removed[v]) {
            keep.push_back(v);
        } else if (inst.source().contains(v) != inst.target().contains(v)) {
            return std::nullopt;
        }
    }
    return detail::restrict_instance(inst, VertexSet::from_sorted(std::move(keep)), m_prime,
        VertexSet::from_sorted(std::move(frozen)));
}

/// A component of G' - M' with its neighborhood in M' and its S' ∩ T' vertices.
struct ColoredComponent {
    VertexSet vertices;
    VertexSet boundary;
    VertexSet marked;
    bool important = false;

    friend bool operator==(const ColoredComponent&, const ColoredComponent&) = default;
};

/// Canonical form of (G[C ∪ N], marked) up to isomorphisms fixing N point-wise.
struct ComponentClassKey {
    VertexSet boundary;
    std::size_t size = 0;
    std::vector<std::uint8_t> code;

    friend auto operator<=>(const ComponentClassKey&, const ComponentClassKey&) = default;
    friend bool operator==(const ComponentClassKey&, const ComponentClassKey&) = default;
};

inline ComponentClassKey canonical_key(const Graph& g, const ColoredComponent& c)
{
    std::vector<Vertex> perm = c.vertices.members();
    ComponentClassKey key{c.boundary, perm.size(), {}};
    std::vector<std::uint8_t> code;
    bool first = true;
    do {
        code.clear();
        for (std::size_t i = 0; i < perm.size(); ++i)
            code.push_back(c.marked.contains(perm[i]) ? 1 : 0);
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                code.push_back(g.adjacent(perm[i], perm[j]) ? 1 : 0);
        for (Vertex v : perm)
            for (Vertex b : c.boundary)
                code.push_back(g.adjacent(v, b) ? 1 : 0);
        if (first || code < key.code)
            key.code = code;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return key;
}

struct ComponentClasses {
    std::map<ComponentClassKey, std::vector<ColoredComponent>> classes;
    std::vector<ColoredComponent> important;
};

/// Splits G' - M' into components; `reduced.modulator()` must hold M'.
inline ComponentClasses classify_components(const Instance& reduced, std::size_t two_ell)
{
    const Graph& g = reduced.graph();
    const VertexSet m_prime = reduced.modulator().value_or(VertexSet{});
    const VertexSet both = set_intersection(reduced.source(), reduced.target());
    const std::size_t n = g.vertex_count();
    ComponentClasses out;
    std::vector<char> seen(n, 0);
    for (Vertex v = 0; static_cast<std::size_t>(v) < n; ++v) {
        if (seen[v] || m_prime.contains(v))
            continue;
        std::vector<Vertex> comp{v};
        std::vector<Vertex> boundary;
        seen[v] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex u : g.neighbors(comp[i])) {
                if (m_prime.contains(u)) {
                    boundary.push_back(u);
                } else if (!seen[u]) {
                    seen[u] = 1;
                    comp.push_back(u);
                }
            }
        ColoredComponent c;
        c.vertices = VertexSet(std::move(comp));
        c.boundary = VertexSet(std::move(boundary));
        c.marked = set_intersection(c.vertices, both);
        for (Vertex u : c.vertices)
            if (reduced.source().contains(u) != reduced.target().contains(u))
                c.important = true;
        if (c.important) {
            out.important.push_back(std::move(c));
            continue;
        }
        if (c.vertices.size() > two_ell)
            throw InternalError("unimportant component of size " + std::to_string(c.vertices.size())
                + " survived reduction (bound " + std::to_string(two_ell) + ")");
        ComponentClassKey key = canonical_key(g, c);
        out.classes[std::move(key)].push_back(std::move(c));
    }
    return out;
}

/// Keeps every important component and at most two_ell components per class.
inline std::vector<ColoredComponent> prune_classes(const ComponentClasses& classes, std::size_t two_ell)
{
    std::vector<ColoredComponent> kept = classes.important;
    for (const auto& [key, members] : classes.classes)
        for (std::size_t i = 0; i < std::min(members.size(), two_ell); ++i)
            kept.push_back(members[i]);
    return kept;
}

/// Exhaustive depth-first search over move sequences of length at most ell.
inline std::optional<ReconfigSequence> brute_search(const Instance& inst, Rule rule, SolveStats* stats = nullptr)
{
    using detail::Config;
    const Config target = inst.target().members();
    std::unordered_map<Config, std::size_t, detail::ConfigHash> best_budget;
    std::vector<int> blocked(inst.graph().vertex_count(), 0);
    std::vector<Config> path{inst.source().members()};

    auto dfs = [&](auto&& self, std::size_t remaining) -> bool {
        const Config cur = path.back();
        if (cur == target)
            return true;
        if (remaining == 0)
            return false;
        auto [it, fresh] = best_budget.try_emplace(cur, remaining);
        if (!fresh) {
            if (it->second >= remaining)
                return false;
            it->second = remaining;
        }
        if (stats)
            ++stats->nodes_expanded;
        std::vector<Config> moves;
        detail::for_each_move(inst.graph(), cur, rule, blocked, [&](const Config& nb) { moves.push_back(nb); });
        for (Config& nb : moves) {
            path.push_back(std::move(nb));
            if (self(self, remaining - 1))
                return true;
            path.pop_back();
        }
        return false;
    };
    if (!dfs(dfs, inst.ell()))
        return std::nullopt;
    ReconfigSequence seq;
    for (Config& c : path)
        seq.steps.push_back(VertexSet::from_sorted(std::move(c)));
    return seq;
}

struct SeparationOptions {
    /// Number of random colorings; defaults to min(4^(ell * Delta), trial_cap).
    std::optional<std::size_t> trials;
    std::size_t trial_cap = 100'000;
    /// Iterate over all 2^|H| colorings instead of sampling.
    bool exhaustive = false;
    std::uint64_t seed = 0;
};

inline std::size_t default_trials(std::size_t ell, std::size_t delta, std::size_t cap)
{
    std::size_t trials = 1;
    for (std::size_t i = 0; i < ell * delta && trials < cap; ++i)
        trials *= 4;
    return std::min(trials, cap);
}

/// One-sided Monte-Carlo solver: yes answers carry a validated witness, misses
/// are reported as probably_no.
inline SolveResult solve_separation(const Instance& inst, const VertexSet& m, Rule rule,
    const SeparationOptions& opt = {})
{
    const Graph& g = inst.graph();
    require_valid(g, m, "modulator");
    if (opt.trials && *opt.trials == 0)
        throw InputError("trials must be positive");
    SolveResult result;
    if (inst.source() == inst.target()) {
        result.answer = Answer::yes;
        result.sequence = ReconfigSequence{{inst.source()}};
        return result;
    }
    if (inst.ell() == 0) {
        result.answer = Answer::no;
        return result;
    }
    if (m.size() > 30)
        throw InputError("modulator of size " + std::to_string(m.size()) + " is too large to guess subsets of");
    const Instance base(g, inst.source(), inst.target(), inst.k(), inst.ell(), m);
    const VertexSet h = complement(g, m);
    if (opt.exhaustive && h.size() > 30)
        throw InputError("exhaustive coloring needs |H| <= 30");

    const std::size_t two_ell = 2 * inst.ell();
    const std::uint64_t guesses = std::uint64_t{1} << m.size();
    const std::size_t trials = opt.exhaustive
        ? static_cast<std::size_t>(std::uint64_t{1} << h.size())
        : opt.trials.value_or(default_trials(inst.ell(), max_degree_in_h(g, m), opt.trial_cap));
    std::set<VertexSet> searched; // final vertex sets already brute-forced

    for (std::size_t trial = 0; trial < trials; ++trial) {
        ++result.stats.trials;
        const Coloring chi = opt.exhaustive ? coloring_from_mask(g, m, trial)
                                            : color_h(g, m, derive_seed(opt.seed, trial));
        for (std::uint64_t mask = 0; mask < guesses; ++mask) {
            std::vector<Vertex> picked;
            for (std::size_t i = 0; i < m.size(); ++i)
                if ((mask >> i) & 1U)
                    picked.push_back(m[i]);
            auto reduced = reduce_instance(base, VertexSet::from_sorted(std::move(picked)), chi);
            if (!reduced)
                continue;
            const Instance& red = reduced->instance;
            std::vector<ColoredComponent> kept = prune_classes(classify_components(red, two_ell), two_ell);

            // final vertex set: M' plus the retained components
            std::vector<Vertex> keep_local = red.modulator()->members();
            for (const auto& c : kept)
                keep_local.insert(keep_local.end(), c.vertices.begin(), c.vertices.end());
            const VertexSet keep_set(std::move(keep_local));
            std::vector<Vertex> frozen = reduced->frozen.members();
            std::vector<Vertex> keep_orig;
            for (Vertex v = 0; static_cast<std::size_t>(v) < red.graph().vertex_count(); ++v) {
                const Vertex orig = reduced->to_original[v];
                if (keep_set.contains(v))
                    keep_orig.push_back(orig);
                else if (red.source().contains(v))
                    frozen.push_back(orig); // token of a dropped component; always in S' ∩ T'
            }
            const VertexSet final_vertices = VertexSet::from_sorted(std::move(keep_orig));
            if (!searched.insert(final_vertices).second)
                continue;
            ReducedInstance fin = detail::restrict_instance(base, final_vertices, VertexSet{}, VertexSet(frozen));
            auto seq = brute_search(fin.instance, rule, &result.stats);
            if (!seq)
                continue;

            ReconfigSequence lifted;
            for (const VertexSet& step : seq->steps) {
                std::vector<Vertex> conf = fin.frozen.members();
                for (Vertex v : step)
                    conf.push_back(fin.to_original[v]);
                lifted.steps.emplace_back(std::move(conf));
            }
            if (auto check = validate_sequence(inst, lifted, rule); !check)
                throw InternalError("lifted separation witness rejected: " + check.message);
            result.answer = Answer::yes;
            result.sequence = std::move(lifted);
            return result;
        }
    }
    result.answer = Answer::probably_no;
    return result;
}

} // namespace isr
