#include "isr/graph.hpp"
#include "isr/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace isr;
using namespace isr::test;

TEST(Graph, RejectsSelfLoopsAndBadIds)
{
    EXPECT_THROW(Graph(2, {{0, 0}}), InputError);
    EXPECT_THROW(Graph(2, {{0, 2}}), InputError);
    Graph g(3, {{0, 1}, {1, 0}, {0, 1}});
    EXPECT_EQ(g.edge_count(), 1U);
    EXPECT_TRUE(g.adjacent(1, 0));
}

TEST(Graph, IndependenceExamples)
{
    Graph edge(2, {{0, 1}});
    EXPECT_FALSE(is_independent(edge, {0, 1}));
    EXPECT_TRUE(is_independent(edge, {0}));
    EXPECT_TRUE(is_independent(path_graph(3), {0, 2}));
    EXPECT_THROW(is_independent(edge, {5}), InputError);
}

TEST(Graph, DegeneracyExamples)
{
    EXPECT_EQ(degeneracy(path_graph(4)), 1U);
    EXPECT_EQ(degeneracy(complete_graph(4)), 3U);
    EXPECT_EQ(degeneracy(cycle_graph(6)), 2U);
    EXPECT_EQ(degeneracy(Graph(5, {})), 0U);
    EXPECT_EQ(degeneracy(Graph()), 0U);
}

TEST(Graph, DegeneracyOrderIsWitnessAndMinimal)
{
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 9;
        Graph g = random_graph(n, 0.45, rng);
        DegeneracyOrder d = degeneracy_order(g);
        ASSERT_EQ(d.order.size(), n);
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i)
            pos[d.order[i]] = i;
        std::size_t max_forward = 0;
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t fwd = 0;
            for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
                fwd += pos[u] > pos[v] ? 1 : 0;
            max_forward = std::max(max_forward, fwd);
        }
        EXPECT_EQ(max_forward, d.degeneracy);
        EXPECT_LE(d.degeneracy, g.max_degree());

        // brute force: max over vertex subsets of the min degree inside the subset
        std::size_t brute = 0;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            std::size_t min_deg = n;
            for (std::size_t v = 0; v < n; ++v) {
                if (!((mask >> v) & 1U))
                    continue;
                std::size_t deg = 0;
                for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
                    deg += (mask >> u) & 1U;
                min_deg = std::min(min_deg, deg);
            }
            brute = std::max(brute, min_deg);
        }
        EXPECT_EQ(d.degeneracy, brute);
    }
}

TEST(Graph, DegeneracyTieBreakIsSmallestId)
{
    EXPECT_EQ(degeneracy_order(Graph(3, {})).order, (std::vector<Vertex>{0, 1, 2}));
    EXPECT_EQ(degeneracy_order(path_graph(4)).order.front(), 0);
}

TEST(Graph, NeighborhoodExamples)
{
    Graph p3 = path_graph(3);
    EXPECT_EQ(neighborhood(p3, {1}), (VertexSet{0, 2}));
    EXPECT_EQ(neighborhood(p3, {0, 2}), (VertexSet{1}));
    EXPECT_TRUE(neighborhood(p3, {}).empty());
    EXPECT_EQ(closed_neighborhood(p3, {0}), (VertexSet{0, 1}));
}

TEST(Graph, InstanceValidation)
{
    Graph p3 = path_graph(3);
    EXPECT_THROW(Instance(p3, {0, 1}, {0, 2}, 2, 1), InputError);
    EXPECT_THROW(Instance(p3, {0}, {0, 2}, 1, 1), InputError);
    EXPECT_THROW(Instance(p3, {0}, {2}, 1, 1, VertexSet{7}), InputError);
    EXPECT_NO_THROW(Instance(p3, {0}, {2}, 1, 0));
}

TEST(Graph, ValidateSequenceExamples)
{
    Instance inst(path_graph(3), {0}, {2}, 1, 2);
    ReconfigSequence walk{{{0}, {1}, {2}}};
    EXPECT_TRUE(validate_sequence(inst, walk, Rule::slide));
    EXPECT_TRUE(validate_sequence(inst, walk, Rule::jump));
    ReconfigSequence hop{{{0}, {2}}};
    SequenceCheck c = validate_sequence(inst, hop, Rule::slide);
    EXPECT_FALSE(c);
    EXPECT_EQ(c.step, 1U);
    EXPECT_TRUE(validate_sequence(inst, hop, Rule::jump));
    EXPECT_FALSE(validate_sequence(inst.with_ell(1), walk, Rule::slide));
    EXPECT_TRUE(validate_sequence(inst.with_ell(1), walk, Rule::slide, LengthBound::ignore));
}

TEST(Graph, ValidateSequenceReportsFirstViolation)
{
    Instance inst(path_graph(4), {0}, {3}, 1, 5);
    EXPECT_FALSE(validate_sequence(inst, ReconfigSequence{{{1}, {2}, {3}}}, Rule::slide));
    EXPECT_FALSE(validate_sequence(inst, ReconfigSequence{{{0}, {1}, {2}}}, Rule::slide));
    EXPECT_FALSE(validate_sequence(inst, ReconfigSequence{{{0}, {0, 2}, {3}}}, Rule::jump));
    EXPECT_FALSE(validate_sequence(inst, ReconfigSequence{}, Rule::jump));
}

// Single moves accepted by the validator are exactly the moves the oracle generates.
TEST(Graph, ValidatorMatchesOracleMoves)
{
    auto check_graph = [](const Graph& g) {
        for (std::size_t k = 1; k <= 2; ++k) {
            auto sets = brute_independent_sets(g, k);
            std::erase_if(sets, [k](const VertexSet& s) { return s.size() != k; });
            std::vector<int> blocked(g.vertex_count(), 0);
            for (Rule rule : {Rule::slide, Rule::jump})
                for (const VertexSet& a : sets) {
                    std::set<VertexSet> moves;
                    detail::for_each_move(g, a.members(), rule, blocked,
                        [&](const detail::Config& c) { moves.insert(VertexSet::from_sorted(c)); });
                    for (const VertexSet& b : sets) {
                        if (a == b)
                            continue;
                        Instance inst(g, a, b, k, 1);
                        const bool ok = static_cast<bool>(validate_sequence(inst, ReconfigSequence{{a, b}}, rule));
                        ASSERT_EQ(ok, moves.contains(b));
                    }
                }
        }
    };
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * (n - 1) / 2)); ++code)
            check_graph(graph_from_code(n, code));
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial)
        check_graph(random_graph(5 + trial % 3, 0.35, rng));
}

TEST(Graph, InducedSubgraphRelabels)
{
    InducedSubgraph sub = induced_subgraph(cycle_graph(5), {0, 1, 3});
    EXPECT_EQ(sub.graph.vertex_count(), 3U);
    EXPECT_EQ(sub.graph.edge_count(), 1U);
    EXPECT_EQ(sub.to_original, (std::vector<Vertex>{0, 1, 3}));
}
