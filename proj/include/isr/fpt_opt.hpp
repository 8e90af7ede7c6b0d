#pragma once

// Shortest reconfiguration (sliding or jumping) for degenerate graphs.
//
// A guess is a sequence J_0 = S, J_1, ..., J_L = T of covering-family members.
// For a fixed guess the solver propagates frontiers of constraint sets: a
// constraint (X, b) demands exactly b tokens inside X, and a configuration Z
// inside J_i is reachable along the guess iff it satisfies some constraint set
// of frontier i. Guesses are enumerated depth-first over prefixes so that
// frontiers are shared, and a prefix whose frontier was already explored with
// at least as many remaining steps is skipped.

#include "isr/covering.hpp"
#include "isr/graph.hpp"
#include "isr/result.hpp"

#include <boost/container_hash/hash.hpp>

#include <cassert>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

namespace isr {

struct Constraint {
    VertexSet support;
    std::size_t budget = 0;

    friend bool operator==(const Constraint&, const Constraint&) = default;
    friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

/// Constraints kept sorted by support, which makes equal sets compare equal.
struct ConstraintSet {
    std::vector<Constraint> constraints;

    [[nodiscard]] std::size_t size() const noexcept { return constraints.size(); }

    friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
    friend auto operator<=>(const ConstraintSet&, const ConstraintSet&) = default;
};

/// True iff |z ∩ X| = b for every (X, b) in c.
inline bool satisfies(const VertexSet& z, const ConstraintSet& c)
{
    for (const auto& [support, budget] : c.constraints)
        if (intersection_size(z, support) != budget)
            return false;
    return true;
}

struct FrontierNode {
    ConstraintSet set;
    /// Indices into the previous frontier of every constraint set that spawned this one.
    std::vector<std::size_t> parents;
};

struct Frontier {
    std::size_t step = 0;
    std::vector<FrontierNode> nodes;
    /// Constraints emitted by the step before feasibility pruning and merging.
    std::size_t raw_constraints = 0;

    [[nodiscard]] bool empty() const noexcept { return nodes.empty(); }

    [[nodiscard]] std::size_t constraint_count() const
    {
        std::size_t c = 0;
        for (const auto& node : nodes)
            c += node.set.size();
        return c;
    }
};

inline Frontier initial_frontier(const VertexSet& source, std::size_t k)
{
    Frontier f;
    f.nodes.push_back({ConstraintSet{{Constraint{source, k}}}, {}});
    f.raw_constraints = 1;
    return f;
}

namespace detail {

/// Collects emitted constraint sets, drops infeasible ones and merges duplicates.
class FrontierBuilder {
public:
    explicit FrontierBuilder(std::size_t step) { out_.step = step; }

    void offer(std::vector<Constraint> constraints, std::size_t parent)
    {
        out_.raw_constraints += constraints.size();
        for (const auto& c : constraints)
            if (c.budget == 0 || c.support.size() < c.budget)
                return;
        std::sort(constraints.begin(), constraints.end());
        ConstraintSet set{std::move(constraints)};
        auto [it, inserted] = index_.try_emplace(std::move(set), std::vector<std::size_t>{});
        auto& parents = it->second;
        if (std::find(parents.begin(), parents.end(), parent) == parents.end())
            parents.push_back(parent);
    }

    Frontier finish() &&
    {
        out_.nodes.reserve(index_.size());
        for (auto& [set, parents] : index_) {
            std::sort(parents.begin(), parents.end());
            out_.nodes.push_back({set, std::move(parents)});
        }
        return std::move(out_);
    }

private:
    Frontier out_;
    std::map<ConstraintSet, std::vector<std::size_t>> index_;
};

} // namespace detail

/// One sliding step: every constraint (X, b) in turn sends one token from X to N(X) ∩ J.
inline Frontier slide_step(const Frontier& prev, const VertexSet& j, const Graph& g)
{
    detail::FrontierBuilder builder(prev.step + 1);
    for (std::size_t p = 0; p < prev.nodes.size(); ++p) {
        const auto& cs = prev.nodes[p].set.constraints;
        for (std::size_t moved = 0; moved < cs.size(); ++moved) {
            const auto& [x, b] = cs[moved];
            std::vector<Constraint> child;
            if (b > 1)
                child.push_back({set_intersection(x, j), b - 1});
            child.push_back({set_intersection(neighborhood(g, x), j), 1});
            for (std::size_t o = 0; o < cs.size(); ++o)
                if (o != moved)
                    child.push_back({set_intersection(cs[o].support, j), cs[o].budget});
            builder.offer(std::move(child), p);
        }
    }
    return std::move(builder).finish();
}

/// One jumping step. Emits, per constraint set C:
///   - C with every support intersected with J (a jump inside one support);
///   - per (X, b): one token leaves X for a vertex of J outside every support;
///   - per (X, b) and other (X', b'): one budget unit moves from X to X'.
inline Frontier jump_step(const Frontier& prev, const VertexSet& j, const Graph& g)
{
    detail::FrontierBuilder builder(prev.step + 1);
    for (std::size_t p = 0; p < prev.nodes.size(); ++p) {
        const auto& cs = prev.nodes[p].set.constraints;

        std::vector<Constraint> same;
        VertexSet covered;
        for (const auto& [x, b] : cs) {
            same.push_back({set_intersection(x, j), b});
            covered = set_union(covered, x);
        }
        builder.offer(std::move(same), p);

        const VertexSet fresh = set_difference(j, covered);
        for (std::size_t moved = 0; moved < cs.size(); ++moved) {
            const auto& [x, b] = cs[moved];
            std::vector<Constraint> outward;
            if (b > 1)
                outward.push_back({set_intersection(x, j), b - 1});
            outward.push_back({set_union(set_intersection(neighborhood(g, x), j), fresh), 1});
            for (std::size_t o = 0; o < cs.size(); ++o)
                if (o != moved)
                    outward.push_back({set_intersection(cs[o].support, j), cs[o].budget});
            builder.offer(std::move(outward), p);

            if (cs.size() <= 1)
                continue;
            for (std::size_t dest = 0; dest < cs.size(); ++dest) {
                if (dest == moved)
                    continue;
                std::vector<Constraint> transfer;
                for (std::size_t o = 0; o < cs.size(); ++o) {
                    std::size_t budget = cs[o].budget;
                    if (o == moved)
                        budget -= 1;
                    if (o == dest)
                        budget += 1;
                    if (budget > 0)
                        transfer.push_back({set_intersection(cs[o].support, j), budget});
                }
                builder.offer(std::move(transfer), p);
            }
        }
    }
    return std::move(builder).finish();
}

inline Frontier advance(const Frontier& prev, const VertexSet& j, const Graph& g, Rule rule)
{
    return rule == Rule::slide ? slide_step(prev, j, g) : jump_step(prev, j, g);
}

/// Index of the first constraint set satisfied by z, if any.
inline std::optional<std::size_t> satisfied_node(const Frontier& f, const VertexSet& z)
{
    for (std::size_t i = 0; i < f.nodes.size(); ++i)
        if (satisfies(z, f.nodes[i].set))
            return i;
    return std::nullopt;
}

/// Structural audit of a frontier against J: supports inside J, budgets
/// summing to k, supports pairwise disjoint. Returns the number of violating sets.
inline std::size_t count_invariant_violations(const Frontier& f, const VertexSet& j, std::size_t k)
{
    std::size_t bad = 0;
    for (const auto& node : f.nodes) {
        std::size_t total = 0;
        std::size_t support_sum = 0;
        VertexSet all;
        bool inside = true;
        for (const auto& [x, b] : node.set.constraints) {
            total += b;
            support_sum += x.size();
            all = set_union(all, x);
            inside = inside && is_subset(x, j);
        }
        if (!inside || total != k || all.size() != support_sum)
            ++bad;
    }
    return bad;
}

/// Observer hook invoked after every frontier computation.
struct StepRecord {
    Rule rule;
    const Frontier& prev;
    const VertexSet& j;
    const Frontier& next;
};
using StepObserver = std::function<void(const StepRecord&)>;

struct GuessRun {
    bool accepted = false;
    std::vector<Frontier> frontiers;
};

/// Propagates frontiers along a fixed guess; accepted iff T satisfies a set of the last frontier.
inline GuessRun run_guess(const Instance& inst, const std::vector<VertexSet>& guess, Rule rule,
    const StepObserver& observer = {})
{
    if (guess.empty() || guess.front() != inst.source() || guess.back() != inst.target())
        throw InputError("guess must start at S and end at T");
    GuessRun run;
    run.frontiers.push_back(initial_frontier(inst.source(), inst.k()));
    for (std::size_t i = 1; i < guess.size() && !run.frontiers.back().empty(); ++i) {
        Frontier next = advance(run.frontiers.back(), guess[i], inst.graph(), rule);
        if (observer)
            observer({rule, run.frontiers.back(), guess[i], next});
        run.frontiers.push_back(std::move(next));
    }
    run.accepted = run.frontiers.size() == guess.size() && satisfied_node(run.frontiers.back(), inst.target());
    return run;
}

/// Rebuilds a reconfiguration sequence from an accepted run by walking parent
/// links backwards from T. At each step it looks for a configuration one move
/// earlier that lies in J_{i-1} and satisfies a parent constraint set. Jump
/// runs may also keep the configuration unchanged (a same-support step with no
/// free vertex); such repeats are dropped from the result.
inline ReconfigSequence extract_witness(const std::vector<Frontier>& frontiers, const std::vector<VertexSet>& guess,
    const Graph& g, Rule rule)
{
    if (frontiers.size() != guess.size() || frontiers.empty())
        throw InternalError("frontier and guess lengths disagree");
    VertexSet z = guess.back();
    auto node = satisfied_node(frontiers.back(), z);
    if (!node)
        throw InternalError("target does not satisfy the final frontier");

    std::vector<VertexSet> backwards{z};
    for (std::size_t i = frontiers.size() - 1; i > 0; --i) {
        const Frontier& prev = frontiers[i - 1];
        const VertexSet& earlier = guess[i - 1];
        std::optional<std::pair<VertexSet, std::size_t>> pick;
        for (std::size_t parent : frontiers[i].nodes[*node].parents) {
            const ConstraintSet& c = prev.nodes[parent].set;
            for (Vertex v : z) {
                for (Vertex u : earlier) {
                    if (z.contains(u) || (rule == Rule::slide && !g.adjacent(u, v)))
                        continue;
                    VertexSet candidate = z.without(v).with(u);
                    if (satisfies(candidate, c)) {
                        pick.emplace(std::move(candidate), parent);
                        break;
                    }
                }
                if (pick)
                    break;
            }
            if (pick)
                break;
        }
        if (!pick && rule == Rule::jump) {
            for (std::size_t parent : frontiers[i].nodes[*node].parents)
                if (is_subset(z, earlier) && satisfies(z, prev.nodes[parent].set)) {
                    pick.emplace(z, parent);
                    break;
                }
        }
        if (!pick)
            throw InternalError("witness reconstruction failed at step " + std::to_string(i));
        z = std::move(pick->first);
        node = pick->second;
        backwards.push_back(z);
    }
    std::reverse(backwards.begin(), backwards.end());
    backwards.erase(std::unique(backwards.begin(), backwards.end()), backwards.end());
    return ReconfigSequence{std::move(backwards)};
}

struct OptOptions {
    std::size_t guess_cap = 10'000'000;
    StepObserver observer;
};

namespace detail {

inline std::vector<std::int32_t> frontier_key(const Frontier& f)
{
    std::vector<std::int32_t> key;
    for (const auto& node : f.nodes) {
        key.push_back(static_cast<std::int32_t>(node.set.size()));
        for (const auto& [x, b] : node.set.constraints) {
            key.push_back(static_cast<std::int32_t>(b));
            key.push_back(static_cast<std::int32_t>(x.size()));
            key.insert(key.end(), x.begin(), x.end());
        }
    }
    return key;
}

struct KeyHash {
    std::size_t operator()(const std::vector<std::int32_t>& k) const noexcept
    {
        return boost::hash_range(k.begin(), k.end());
    }
};

struct BudgetExceeded {};

} // namespace detail

/// Decides whether S reaches T within ell moves under `rule`, trying every
/// guess from fam (S and T are added). Lengths are tried shortest first and
/// members in family order, so the reported witness comes from the
/// lexicographically first accepted guess of the smallest accepted length.
inline SolveResult solve_opt(const Instance& inst, const CoveringFamily& fam, Rule rule, const OptOptions& opt = {})
{
    SolveResult result;
    const VertexSet& s = inst.source();
    const VertexSet& t = inst.target();
    if (s == t) {
        result.answer = Answer::yes;
        result.sequence = ReconfigSequence{{s}};
        return result;
    }
    if (inst.ell() == 0)
        return result;

    CoveringFamily members = fam;
    members.add_endpoints(s, t);
    members = prune_small(std::move(members), inst.k());
    for (const auto& m : members.sets)
        if (!is_independent(inst.graph(), m))
            throw InputError("covering family contains a dependent set");
    result.stats.family_size = members.size();

    const Graph& g = inst.graph();
    std::vector<Frontier> stack;
    std::vector<VertexSet> guess;
    std::unordered_map<std::vector<std::int32_t>, std::size_t, detail::KeyHash> explored;

    auto step = [&](const VertexSet& j) {
        if (++result.stats.guesses > opt.guess_cap)
            throw detail::BudgetExceeded{};
        Frontier next = advance(stack.back(), j, g, rule);
        if (opt.observer)
            opt.observer({rule, stack.back(), j, next});
        result.stats.nodes_expanded += next.nodes.size();
        result.stats.frontier_peak = std::max(result.stats.frontier_peak, next.nodes.size());
        return next;
    };

    // Returns true once an accepting guess sits on the stack.
    auto search = [&](auto&& self, std::size_t depth, std::size_t length) -> bool {
        if (depth == length) {
            if (rule == Rule::slide && guess.back() == t)
                return false;
            Frontier last = step(t);
            if (!satisfied_node(last, t))
                return false;
            stack.push_back(std::move(last));
            guess.push_back(t);
            return true;
        }
        for (const VertexSet& j : members.sets) {
            if (rule == Rule::slide && j == guess.back())
                continue;
            Frontier next = step(j);
            if (next.empty())
                continue;
            const std::size_t remaining = length - depth;
            auto [it, inserted] = explored.try_emplace(detail::frontier_key(next), remaining);
            if (!inserted) {
                if (it->second >= remaining)
                    continue;
                it->second = remaining;
            }
            stack.push_back(std::move(next));
            guess.push_back(j);
            if (self(self, depth + 1, length))
                return true;
            stack.pop_back();
            guess.pop_back();
        }
        return false;
    };

    try {
        for (std::size_t length = 1; length <= inst.ell(); ++length) {
            explored.clear();
            stack.assign(1, initial_frontier(s, inst.k()));
            guess.assign(1, s);
            if (!search(search, 1, length))
                continue;
            ReconfigSequence witness = extract_witness(stack, guess, g, rule);
            if (auto check = validate_sequence(inst, witness, rule); !check)
                throw InternalError("extracted witness rejected: " + check.message);
            result.answer = Answer::yes;
            result.sequence = std::move(witness);
            return result;
        }
    } catch (const detail::BudgetExceeded&) {
        result.answer = Answer::budget_exceeded;
        return result;
    }
    result.answer = Answer::no;
    return result;
}

} // namespace isr
