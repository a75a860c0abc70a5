#include <gtest/gtest.h>

#include <periodic/graph_io.hpp>
#include <periodic/multigraph.hpp>
#include <periodic/octagons.hpp>

using namespace periodic;

namespace {

Multigraph k4() { return Multigraph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

}  // namespace

TEST(Multigraph, EndsStaySortedByNeighbourThenEdge)
{
    Multigraph g(3);
    g.add_edge(3, 1);
    g.add_edge(2, 1);
    g.add_edge(1, 3);
    auto e = g.ends(1);
    ASSERT_EQ(e.size(), 3u);
    EXPECT_EQ(e[0].neighbour, 2);
    EXPECT_EQ(e[1].neighbour, 3);
    EXPECT_EQ(e[1].edge, 0);
    EXPECT_EQ(e[2].edge, 2);
    EXPECT_EQ(g.multiplicity(1, 3), 2);
    EXPECT_FALSE(g.is_simple());
    EXPECT_EQ(g.parallel_pairs(), (std::vector<std::pair<int, int>>{{1, 3}}));
}

TEST(Multigraph, RejectsLoopsAndBadEndpoints)
{
    Multigraph g(3);
    EXPECT_THROW(g.add_edge(2, 2), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 1), std::out_of_range);
    EXPECT_THROW(g.add_edge(1, 4), std::out_of_range);
}

TEST(Multigraph, BipartitionPutsVertexOneInClassA)
{
    auto g = named_graph("G0_3345");
    auto b = bipartition(g);
    ASSERT_TRUE(b);
    EXPECT_EQ((*b.partition)[1], Side::A);
    for (const auto& e : g.edges()) EXPECT_NE((*b.partition)[e.u], (*b.partition)[e.v]);
    auto odd = bipartition(k4());
    EXPECT_FALSE(odd);
    const auto& w = odd.witness.walk;
    ASSERT_EQ(w.size() % 2, 1u);
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_GT(k4().multiplicity(w[i], w[(i + 1) % w.size()]), 0);
}

TEST(Graph6, RoundTripsSimpleGraphs)
{
    for (const auto& ng : named_graphs()) {
        Multigraph g(16, ng.edges);
        if (!g.is_simple()) continue;
        EXPECT_EQ(read_graph6(write_graph6(g)), g) << ng.name;
    }
    EXPECT_EQ(write_graph6(k4()), "C~");
}

TEST(Graph6, RefusesParallelEdgesAndBadBytes)
{
    EXPECT_THROW(write_graph6(named_graph("G3_112")), FormatError);
    EXPECT_THROW(read_graph6("C\x01"), ParseError);
    EXPECT_THROW(read_graph6("C"), ParseError);
}

TEST(MultigraphText, RoundTripsWithParallelEdges)
{
    auto g = named_graph("G3_112");
    auto text = write_multigraph_text(g);
    EXPECT_EQ(read_multigraph_text(text), g);
    auto two = read_multigraph_text_all(text + "# second\n" + write_multigraph_text(k4()));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[1], k4());
}

TEST(MultigraphText, ReportsErrorsWithOffsets)
{
    try {
        read_multigraph_text("mg 3 1\ne 1 4\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 9u);
    }
    EXPECT_THROW(read_multigraph_text("mg 3 1\ne 2 2\n"), ParseError);
    EXPECT_THROW(read_multigraph_text("mg 3 2\ne 1 2\n"), ParseError);
    EXPECT_THROW(read_multigraph_text("graph 3 0\n"), ParseError);
    EXPECT_THROW(read_multigraph_text("mg 3 1\ne 1 2 3\n"), ParseError);
}

TEST(SniffFormat, DistinguishesTheTwoFormats)
{
    EXPECT_EQ(sniff_format("  mg 4 6\n"), GraphFormat::multigraph_text);
    EXPECT_EQ(sniff_format("# comment\nmg 4 6\n"), GraphFormat::multigraph_text);
    EXPECT_EQ(sniff_format("C~\n"), GraphFormat::graph6);
    // A 46-vertex graph6 record starts with 'm' too.
    Multigraph big(46);
    for (int v = 1; v < 46; ++v) big.add_edge(v, v + 1);
    auto g6 = write_graph6(big);
    ASSERT_EQ(g6.front(), 'm');
    EXPECT_EQ(sniff_format(g6), GraphFormat::graph6);
    EXPECT_EQ(read_graphs(sniff_format(g6), g6).front(), big);
}
