#include "isr/fpt_opt.hpp"
#include "isr/generators.hpp"
#include "isr/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace isr;
using namespace isr::test;

namespace {

ConstraintSet cs(std::vector<Constraint> c)
{
    std::sort(c.begin(), c.end());
    return ConstraintSet{std::move(c)};
}

std::vector<ConstraintSet> sets_of(const Frontier& f)
{
    std::vector<ConstraintSet> out;
    for (const auto& node : f.nodes)
        out.push_back(node.set);
    return out;
}

} // namespace

TEST(FptOpt, Satisfies)
{
    EXPECT_TRUE(satisfies({0, 2}, cs({{{0, 2}, 2}})));
    EXPECT_FALSE(satisfies({0, 2}, cs({{{0}, 1}, {{5}, 1}})));
    VertexSet s{1, 4, 6};
    EXPECT_TRUE(satisfies(s, initial_frontier(s, 3).nodes[0].set));
}

TEST(FptOpt, SlideStepOnPath)
{
    Graph p3 = path_graph(3);
    Frontier f1 = slide_step(initial_frontier({0}, 1), {1}, p3);
    EXPECT_EQ(f1.step, 1U);
    EXPECT_EQ(sets_of(f1), (std::vector<ConstraintSet>{cs({{{1}, 1}})}));
    Frontier f2 = slide_step(f1, {2}, p3);
    EXPECT_EQ(sets_of(f2), (std::vector<ConstraintSet>{cs({{{2}, 1}})}));
    // J with no neighbour of the support empties the frontier
    EXPECT_TRUE(slide_step(initial_frontier({0}, 1), {2}, p3).empty());
}

TEST(FptOpt, JumpStepExamples)
{
    Graph two(2, {});
    Frontier f = jump_step(initial_frontier({0}, 1), {1}, two);
    EXPECT_EQ(sets_of(f), (std::vector<ConstraintSet>{cs({{{1}, 1}})}));

    // |C| = 1: only C1 and C2 children, so at most 2 raw sets of one constraint each
    EXPECT_EQ(f.raw_constraints, 2U);

    // C1 keeps budgets and shrinks supports
    Graph empty(6, {});
    Frontier start = initial_frontier({0, 1}, 2);
    const auto got = sets_of(jump_step(start, {0, 1, 2}, empty));
    EXPECT_NE(std::find(got.begin(), got.end(), cs({{{0, 1}, 2}})), got.end());
    EXPECT_NE(std::find(got.begin(), got.end(), cs({{{0, 1}, 1}, {{2}, 1}})), got.end());
}

TEST(FptOpt, SlideGrowthBoundAndInvariants)
{
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_degenerate_graph(8, 3, 0.5, rng);
        auto inst = random_instance(g, 1 + trial % 3, 4, rng);
        if (!inst)
            continue;
        auto fam = exact_family(g, inst->k());
        fam.add_endpoints(inst->source(), inst->target());
        fam = prune_small(fam, inst->k());
        Frontier f = initial_frontier(inst->source(), inst->k());
        for (std::size_t i = 1; i <= 4 && !f.empty(); ++i) {
            const VertexSet& j = fam.sets[uniform_below(rng, fam.sets.size())];
            Frontier next = slide_step(f, j, g);
            EXPECT_LE(next.raw_constraints, (i + 1) * f.constraint_count());
            EXPECT_EQ(count_invariant_violations(next, j, inst->k()), 0U);
            f = std::move(next);
        }
    }
}

TEST(FptOpt, JumpInvariants)
{
    Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_degenerate_graph(8, 3, 0.5, rng);
        auto inst = random_instance(g, 1 + trial % 3, 4, rng);
        if (!inst)
            continue;
        auto fam = exact_family(g, inst->k());
        fam.add_endpoints(inst->source(), inst->target());
        fam = prune_small(fam, inst->k());
        Frontier f = initial_frontier(inst->source(), inst->k());
        for (std::size_t i = 1; i <= 4 && !f.empty(); ++i) {
            const VertexSet& j = fam.sets[uniform_below(rng, fam.sets.size())];
            f = jump_step(f, j, g);
            EXPECT_EQ(count_invariant_violations(f, j, inst->k()), 0U);
        }
    }
}

TEST(FptOpt, RunGuessExamples)
{
    Instance p3(path_graph(3), {0}, {2}, 1, 2);
    GuessRun run = run_guess(p3, {{0}, {1}, {2}}, Rule::slide);
    EXPECT_TRUE(run.accepted);
    EXPECT_EQ(run.frontiers.size(), 3U);
    EXPECT_EQ(extract_witness(run.frontiers, {{0}, {1}, {2}}, p3.graph(), Rule::slide),
        (ReconfigSequence{{{0}, {1}, {2}}}));

    GuessRun dead = run_guess(p3, {{0}, {2}, {2}}, Rule::slide);
    EXPECT_FALSE(dead.accepted);

    Instance same(path_graph(3), {1}, {1}, 1, 0);
    GuessRun zero = run_guess(same, {{1}}, Rule::slide);
    EXPECT_TRUE(zero.accepted);
    EXPECT_EQ(extract_witness(zero.frontiers, {{1}}, same.graph(), Rule::slide), (ReconfigSequence{{{1}}}));

    EXPECT_THROW(run_guess(p3, {{1}, {2}}, Rule::slide), InputError);
}

TEST(FptOpt, SolveExamples)
{
    Instance p3(path_graph(3), {0}, {2}, 1, 2);
    SolveResult r = solve_opt(p3, exact_family(p3.graph(), 1), Rule::slide);
    ASSERT_EQ(r.answer, Answer::yes);
    EXPECT_EQ(*r.sequence, (ReconfigSequence{{{0}, {1}, {2}}}));
    EXPECT_EQ(bfs_distance(p3, Rule::slide), 2U);

    EXPECT_EQ(solve_opt(p3.with_ell(1), exact_family(p3.graph(), 1), Rule::slide).answer, Answer::no);
    SolveResult j = solve_opt(p3.with_ell(1), exact_family(p3.graph(), 1), Rule::jump);
    ASSERT_EQ(j.answer, Answer::yes);
    EXPECT_EQ(j.sequence->length(), 1U);

    Instance c4(cycle_graph(4), {0, 2}, {1, 3}, 2, 6);
    EXPECT_EQ(solve_opt(c4, exact_family(c4.graph(), 2), Rule::slide).answer, Answer::no);
    EXPECT_EQ(solve_opt(c4, exact_family(c4.graph(), 2), Rule::jump).answer, Answer::no);

    Instance zero(path_graph(3), {0}, {2}, 1, 0);
    EXPECT_EQ(solve_opt(zero, {}, Rule::jump).answer, Answer::no);
    Instance still(path_graph(3), {0}, {0}, 1, 0);
    EXPECT_EQ(*solve_opt(still, {}, Rule::slide).sequence, (ReconfigSequence{{{0}}}));
}

TEST(FptOpt, BudgetExceededIsNotNo)
{
    Instance p6(path_graph(6), {0}, {5}, 1, 5);
    OptOptions opt;
    opt.guess_cap = 3;
    EXPECT_EQ(solve_opt(p6, exact_family(p6.graph(), 1), Rule::slide, opt).answer, Answer::budget_exceeded);
}

TEST(FptOpt, RejectsDependentFamilyMember)
{
    Instance p3(path_graph(3), {0}, {2}, 1, 2);
    EXPECT_THROW(solve_opt(p3, CoveringFamily{{{0, 1}}, 1}, Rule::slide), InputError);
}

// Completeness and soundness on a batch of small instances; the acceptance
// suite runs the full-size version.
TEST(FptOpt, AgreesWithOracle)
{
    Rng rng(47);
    int yes = 0, no = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Graph g = random_degenerate_graph(5 + trial % 4, 2, 0.6, rng);
        auto inst = random_instance(g, 1 + trial % 3, 1 + trial % 4, rng);
        if (!inst)
            continue;
        auto fam = exact_family(g, inst->k());
        for (Rule rule : {Rule::slide, Rule::jump}) {
            SolveResult r = solve_opt(*inst, fam, rule);
            auto d = plain_bfs(g, inst->source(), inst->target(), rule);
            const bool expect = d && *d <= inst->ell();
            ASSERT_EQ(r.answer == Answer::yes, expect) << "trial " << trial << " rule " << to_string(rule);
            if (expect) {
                ++yes;
                ASSERT_TRUE(validate_sequence(*inst, *r.sequence, rule));
                EXPECT_EQ(r.sequence->length(), *d);
            } else {
                ++no;
            }
        }
    }
    EXPECT_GT(yes, 20);
    EXPECT_GT(no, 20);
}

TEST(FptOpt, Deterministic)
{
    Rng rng(53);
    Graph g = random_degenerate_graph(9, 2, 0.6, rng);
    auto inst = random_instance(g, 2, 4, rng);
    ASSERT_TRUE(inst);
    auto fam = exact_family(g, 2);
    SolveResult a = solve_opt(*inst, fam, Rule::jump);
    SolveResult b = solve_opt(*inst, fam, Rule::jump);
    EXPECT_EQ(a.answer, b.answer);
    EXPECT_EQ(a.sequence, b.sequence);
    EXPECT_EQ(a.stats.guesses, b.stats.guesses);
}
