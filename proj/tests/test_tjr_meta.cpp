#include "isr/generators.hpp"
#include "isr/oracle.hpp"
#include "isr/tjr_meta.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace isr;
using namespace isr::test;

TEST(TjrMeta, BuildMetaEdgeRule)
{
    EXPECT_EQ(build_meta(CoveringFamily{{{0, 2}, {1, 3}}, 2}, 2).edge_count(), 0U);
    MetaGraph m = build_meta(CoveringFamily{{{0, 2}, {2, 4}}, 2}, 2);
    EXPECT_EQ(m.edge_count(), 1U);
    EXPECT_EQ(m.adjacency[0], (std::vector<std::size_t>{1}));
    EXPECT_EQ(m.adjacency[1], (std::vector<std::size_t>{0}));
    EXPECT_EQ(build_meta(CoveringFamily{{{0, 1}}, 2}, 2).edge_count(), 0U);
}

TEST(TjrMeta, Reachable)
{
    MetaGraph isolated = build_meta(CoveringFamily{{{0, 2}, {1, 3}}, 2}, 2);
    EXPECT_TRUE(reachable(isolated, 0, 0));
    EXPECT_FALSE(reachable(isolated, 0, 1));
    MetaGraph chain = build_meta(CoveringFamily{{{0, 1}, {1, 2}, {2, 3}}, 2}, 2);
    EXPECT_TRUE(reachable(chain, 0, 2));
    EXPECT_EQ(*meta_path(chain, 0, 2), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_THROW(reachable(chain, 0, 9), InputError);
}

TEST(TjrMeta, ExtractSingleEdge)
{
    CoveringFamily fam{{{0, 2}, {2, 4}}, 2};
    MetaGraph m = build_meta(fam, 2);
    ReconfigSequence seq = extract_jump_sequence(m, {0, 1}, {0, 2}, {2, 4}, 2);
    EXPECT_EQ(seq, (ReconfigSequence{{{0, 2}, {2, 4}}}));
    Instance inst(path_graph(5), {0, 2}, {2, 4}, 2, 1);
    EXPECT_TRUE(validate_sequence(inst, seq, Rule::jump));
}

TEST(TjrMeta, SolveExamples)
{
    Instance star(star_graph(3), {1}, {2}, 1, 0);
    SolveResult r = solve_tjr(star, exact_family(star.graph(), 1));
    ASSERT_EQ(r.answer, Answer::yes);
    EXPECT_EQ(r.sequence->length(), 1U);
    EXPECT_TRUE(r.warning.empty());

    Instance c4(cycle_graph(4), {0, 2}, {1, 3}, 2, 0);
    SolveResult no = solve_tjr(c4, exact_family(c4.graph(), 2));
    EXPECT_EQ(no.answer, Answer::no);

    Instance same(path_graph(3), {0}, {0}, 1, 0);
    EXPECT_EQ(*solve_tjr(same, {}).sequence, (ReconfigSequence{{{0}}}));

    SolveResult unverified = solve_tjr(c4, exact_family(c4.graph(), 2), {false});
    EXPECT_FALSE(unverified.warning.empty());
}

// yes/no equals jump reachability; witness length within (meta-path length) * k.
TEST(TjrMeta, AgreesWithOracle)
{
    Rng rng(61);
    int yes = 0, no = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const bool dense = trial % 2 == 0;
        Graph g = dense ? complement_graph(random_graph(4 + trial % 7, 0.2, rng)) : random_graph(4 + trial % 7, 0.35, rng);
        auto inst = random_instance(g, dense ? 2 : 1 + trial % 3, 0, rng);
        if (!inst)
            continue;
        SolveResult r = solve_tjr(*inst, exact_family(g, inst->k()));
        const bool expect = plain_bfs(g, inst->source(), inst->target(), Rule::jump).has_value();
        ASSERT_EQ(r.answer == Answer::yes, expect) << "trial " << trial;
        if (expect) {
            ++yes;
            ASSERT_TRUE(validate_sequence(*inst, *r.sequence, Rule::jump, LengthBound::ignore));
            EXPECT_LE(r.sequence->length(), r.stats.meta_path_length * inst->k());
        } else {
            ++no;
        }
    }
    EXPECT_GT(yes, 50);
    EXPECT_GT(no, 10) << yes;
}
