#include <gtest/gtest.h>

#include <periodic/enumerate.hpp>

#include "support/oracles.hpp"

using namespace periodic;
using namespace periodic::oracle;

namespace {

// Every library graph lies in a distinct oracle class and every class is hit.
void expect_same_classes(const std::vector<Generated>& lib, const IsoClasses& oracle)
{
    ASSERT_EQ(lib.size(), oracle.size());
    IsoClasses seen;
    for (const auto& g : lib) {
        auto a = to_matrix(g.graph);
        EXPECT_TRUE(oracle.contains(a)) << write_multigraph_text(g.graph);
        EXPECT_TRUE(seen.insert(a)) << "duplicate class in library output";
    }
}

}  // namespace

TEST(Enumerate, CubicMatchesOracle)
{
    for (int n = 4; n <= 10; n += 2) {
        SCOPED_TRACE("n=" + std::to_string(n));
        auto lib = gen_cubic_simple(n);
        auto oracle = brute_force_cubic(n, false);
        expect_same_classes(lib, oracle);

        IsoClasses bip;
        for (const auto& a : oracle.all())
            if (matrix_bipartite(a)) bip.insert(a);
        expect_same_classes(filter_bipartite(lib), bip);
    }
}

TEST(Enumerate, KnownCubicCounts)
{
    const std::vector<std::pair<int, std::size_t>> counts{{4, 1}, {6, 2}, {8, 5}, {10, 19}, {12, 85}, {14, 509}};
    for (auto [n, c] : counts) EXPECT_EQ(gen_cubic_simple(n).size(), c) << "n=" << n;
}

TEST(Enumerate, OutputIsSortedConnectedAndCanonical)
{
    auto lib = gen_cubic_simple(12);
    for (std::size_t i = 0; i < lib.size(); ++i) {
        const auto& g = lib[i];
        EXPECT_TRUE(g.graph.is_regular(3));
        EXPECT_TRUE(g.graph.is_simple());
        EXPECT_TRUE(is_connected(g.graph));
        EXPECT_EQ(canonical_form(g.graph), g.form);
        EXPECT_EQ(canonical_relabel(g.graph), g.graph);
        if (i) EXPECT_LT(lib[i - 1].form, g.form);
    }
}

TEST(Enumerate, RejectsBadArguments)
{
    EXPECT_THROW(gen_cubic_simple(7), std::invalid_argument);
    EXPECT_THROW(gen_cubic_simple(2), std::invalid_argument);
    EXPECT_THROW(gen_deg23_bipartite(6, 5), std::invalid_argument);
    EXPECT_THROW(gen_deg23_bipartite(6, 10), std::invalid_argument);
    EXPECT_THROW((GenSpec{9, GenSpec::Degrees::cubic, 13}.validate()), std::invalid_argument);
}

TEST(Enumerate, DegreeTwoThreeMatchesOracle)
{
    for (auto [n, m] : std::vector<std::pair<int, int>>{{4, 4}, {6, 6}, {6, 7}, {8, 10}, {8, 11}}) {
        SCOPED_TRACE("n=" + std::to_string(n) + " m=" + std::to_string(m));
        expect_same_classes(gen_deg23_bipartite(n, m), brute_force_deg23_bipartite(n, m));
    }
}

TEST(Enumerate, LiftsMatchOracle)
{
    for (int n : {6, 8, 10}) {
        for (int d = 1; d <= n / 2; ++d) {
            SCOPED_TRACE("n=" + std::to_string(n) + " d=" + std::to_string(d));
            auto stage = lift_stage(n, d);
            expect_same_classes(stage.lifted, brute_force_lifted(n, d));
        }
    }
}

TEST(Enumerate, LiftedGraphsHaveTheRequiredShape)
{
    for (int d = 1; d <= 3; ++d) {
        auto stage = lift_stage(12, d);
        EXPECT_LE(stage.lifted.size(), stage.lifted_raw);
        EXPECT_LE(stage.lifted_raw, stage.pre_lift);
        for (const auto& g : stage.lifted) {
            EXPECT_TRUE(g.graph.is_regular(3));
            EXPECT_TRUE(is_bipartite(g.graph));
            EXPECT_TRUE(is_connected(g.graph));
            EXPECT_EQ(static_cast<int>(g.graph.parallel_pairs().size()), d);
            EXPECT_FALSE(has_adjacent_doubles(g.graph));
            for (const auto& e : g.graph.edges()) EXPECT_LE(g.graph.multiplicity(e.u, e.v), 2);
        }
    }
}

TEST(Enumerate, LiftRefusesUnpairedDegreeTwoVertices)
{
    // Path 1-2-3 of degree-2 vertices: vertex 2 has two degree-2 neighbours.
    Multigraph hexagon(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}});
    EXPECT_FALSE(lift_double_edges(hexagon).has_value());
    Multigraph square(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    EXPECT_FALSE(lift_double_edges(square).has_value());
}

TEST(Enumerate, DoublesCensusAgreesWithLifting)
{
    // The direct census includes adjacent doubles; dropping those must leave the lifted set.
    for (int d = 1; d <= 3; ++d) {
        auto direct = gen_cubic_bipartite_with_doubles(10, d);
        std::vector<CanonicalForm> kept;
        for (const auto& g : direct)
            if (!has_adjacent_doubles(g.graph)) kept.push_back(g.form);
        std::vector<CanonicalForm> lifted;
        for (const auto& g : lift_stage(10, d).lifted) lifted.push_back(g.form);
        EXPECT_EQ(kept, lifted) << "d=" << d;
    }
}

TEST(Enumerate, DeterministicAcrossWorkerCounts)
{
    auto one = gen_cubic_simple(14, 1);
    auto four = gen_cubic_simple(14, 4);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].form, four[i].form);
        EXPECT_EQ(one[i].graph, four[i].graph);
    }
    auto a = lift_stage(12, 2, 1), b = lift_stage(12, 2, 3);
    EXPECT_EQ(a.pre_lift, b.pre_lift);
    ASSERT_EQ(a.lifted.size(), b.lifted.size());
    for (std::size_t i = 0; i < a.lifted.size(); ++i) EXPECT_EQ(a.lifted[i].graph, b.lifted[i].graph);
}
