#include <gtest/gtest.h>

#include <numeric>

#include <periodic/octagons.hpp>
#include <periodic/surface.hpp>

using namespace periodic;

TEST(Surface, BudgetFollowsEuler)
{
    auto b2 = surface_budget(2);
    EXPECT_EQ(b2.octagons, 6);
    EXPECT_EQ(b2.dual_vertices, 16);
    EXPECT_EQ(b2.dual_edges, 24);
    EXPECT_EQ(b2.euler_characteristic(), -2);
    EXPECT_TRUE(b2.feasible());

    auto b3 = surface_budget(3);
    EXPECT_EQ(b3.octagons, 12);
    EXPECT_EQ(b3.dual_vertices, 32);
    EXPECT_EQ(b3.euler_characteristic(), -4);

    EXPECT_FALSE(surface_budget(1).feasible());
    EXPECT_EQ(surface_budget(1).octagons, 0);
    EXPECT_THROW(surface_budget(-1), std::invalid_argument);
}

TEST(Surface, DartHelpers)
{
    Multigraph g(2, {{1, 2}, {1, 2}});
    EXPECT_EQ(dart_tail(g, 2), 1);
    EXPECT_EQ(dart_head(g, 2), 2);
    EXPECT_EQ(dart_tail(g, 3), 2);
    EXPECT_EQ(reverse_dart(2), 3);
    EXPECT_EQ(dart_from(g, 1, 2), 3);
    EXPECT_EQ(dart_edge(3), 1);
}

TEST(Surface, FacesPartitionTheDarts)
{
    auto g = named_graph("G0_3538");
    for (OrientationMask m : {0ull, 1ull, 0x1234ull, 0xffffull, 0xa5a5ull}) {
        auto faces = trace_faces(RotationSystem(g, m));
        std::vector<int> hits(static_cast<std::size_t>(2 * g.size()), 0);
        std::size_t total = 0;
        for (const auto& f : faces) {
            total += f.length();
            for (Dart d : f.darts) ++hits[static_cast<std::size_t>(d)];
        }
        EXPECT_EQ(total, static_cast<std::size_t>(2 * g.size()));
        for (int h : hits) EXPECT_EQ(h, 1);
    }
}

TEST(Surface, ReferenceOrderIsAscendingAndMaskReverses)
{
    Multigraph k4(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    RotationSystem r(k4, 0);
    auto c = r.cyclic_order(1);
    EXPECT_EQ(c[0].neighbour, 2);
    EXPECT_EQ(c[1].neighbour, 3);
    EXPECT_EQ(c[2].neighbour, 4);
    RotationSystem s(k4, 1);
    c = s.cyclic_order(1);
    EXPECT_EQ(c[1].neighbour, 4);
    EXPECT_EQ(c[2].neighbour, 3);
    EXPECT_THROW(RotationSystem(Multigraph(3, {{1, 2}}), 0), std::invalid_argument);
}

TEST(Surface, GlobalReversalReversesEveryFace)
{
    auto g = named_graph("G0_3345");
    for (OrientationMask m : {0ull, 0x00ffull, 0x8421ull}) {
        RotationSystem r(g, m);
        auto a = trace_faces(r), b = trace_faces(r.reversed_globally());
        ASSERT_EQ(a.size(), b.size());
        EXPECT_EQ(vertex_key(g, a), vertex_key(g, b));
        EXPECT_EQ(embedding_genus(r), embedding_genus(r.reversed_globally()));
    }
}

// On 16 cubic vertices six faces means genus two, and all-octagon faces
// imply six faces. The fast tracer must agree with the plain one on every mask.
TEST(Surface, FastTracerAgreesOnEveryMask)
{
    auto g = named_graph("G0_3345");
    detail::FaceTracer tracer(g);
    std::size_t valid = 0;
    for (OrientationMask m = 0; m < (OrientationMask{1} << 16); ++m) {
        RotationSystem r(g, m);
        auto faces = trace_faces(r);
        bool all8 = std::all_of(faces.begin(), faces.end(), [](const Face& f) { return f.length() == 8; });
        bool six = faces.size() == 6;
        ASSERT_EQ(tracer.all_faces_of_length(m, 8), all8) << m;
        ASSERT_EQ(six, embedding_genus(r) == 2) << m;
        if (all8) ASSERT_TRUE(six) << m;
        valid += all8;
    }
    EXPECT_EQ(valid, 8u);
}

TEST(Surface, SweepCountsOnSimpleCandidates)
{
    const std::vector<std::pair<std::string, std::size_t>> expected{
        {"G0_3345", 8}, {"G0_3538", 2}, {"G0_3621", 6}, {"G0_4002", 48}, {"G0_4060", 18}};
    for (const auto& [name, masks] : expected) {
        auto s = orientation_octagon_sets(named_graph(name));
        EXPECT_EQ(s.valid.size(), masks) << name;
        // A mask and its complement trace the same faces reversed.
        EXPECT_EQ(s.valid.size() % 2, 0u);
        std::size_t covered = 0;
        for (const auto& set : s.sets) {
            covered += set.orientations.size();
            EXPECT_EQ(set.faces.size(), 6u);
        }
        EXPECT_EQ(covered, masks);
    }
}

TEST(Surface, SweepIsEmptyWhenNoOctagonsFit)
{
    Multigraph k4(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    auto s = orientation_octagon_sets(k4);
    EXPECT_TRUE(s.valid.empty());
    EXPECT_TRUE(s.sets.empty());
}

TEST(Surface, SweepIsDeterministicAcrossWorkers)
{
    auto g = named_graph("G0_4002");
    auto a = orientation_octagon_sets(g, 1), b = orientation_octagon_sets(g, 4);
    EXPECT_EQ(a.valid, b.valid);
    ASSERT_EQ(a.sets.size(), b.sets.size());
    for (std::size_t i = 0; i < a.sets.size(); ++i) EXPECT_EQ(a.sets[i].key(), b.sets[i].key());
}

TEST(Surface, UndirectedCyclicKey)
{
    EXPECT_EQ(undirected_cyclic_key({3, 1, 2}), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(undirected_cyclic_key({3, 2, 1}), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(undirected_cyclic_key({2, 5, 1, 4}), (std::vector<int>{1, 4, 2, 5}));
}
