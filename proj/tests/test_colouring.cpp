#include <gtest/gtest.h>

#include <periodic/colouring.hpp>
#include <periodic/octagons.hpp>

#include "support/oracles.hpp"

using namespace periodic;
using namespace periodic::oracle;

namespace {

std::vector<ColouringKey> keys(const std::vector<Colouring>& cs)
{
    std::vector<ColouringKey> out;
    for (const auto& c : cs) {
        ColouringKey k;
        k.triangles.push_back(-1);
        for (int t : c.triangles()) k.triangles.push_back(t);
        k.labels = c.edge_labels;
        out.push_back(std::move(k));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ColouringProblem problem(const Multigraph& g, OrientationMask m, const Presentation& p,
                         ReadingConvention c = ReadingConvention::class_a_forward)
{
    return {g, m, p, c};
}

// Checks a colouring directly against the rules it must satisfy.
void expect_consistent(const ColouringProblem& p, const Colouring& c)
{
    RotationSystem r(p.graph, p.orientation);
    auto rev = reading_directions(p.graph, p.convention);
    for (int v = 1; v <= p.graph.order(); ++v) {
        const auto& u = c.uses[static_cast<std::size_t>(v)];
        EXPECT_EQ(u.reversed, rev[static_cast<std::size_t>(v)] != 0);
        auto order = r.cyclic_order(v);
        auto l = use_labels(p.presentation, u);
        for (int i = 0; i < 3; ++i) {
            const auto& e = order[static_cast<std::size_t>(i)];
            EXPECT_EQ(c.edge_labels[static_cast<std::size_t>(e.edge)], l[static_cast<std::size_t>(i)]);
            auto other = r.cyclic_order(e.neighbour);
            int j = 0;
            while (other[static_cast<std::size_t>(j)].edge != e.edge) ++j;
            EXPECT_FALSE(same_corner(u, i, c.uses[static_cast<std::size_t>(e.neighbour)], j));
        }
    }
}

}  // namespace

TEST(Colouring, EngineMatchesOracleOnReference)
{
    auto g = named_graph("G0_3345");
    auto t1 = builtin("T1");
    std::size_t total = 0;
    for (OrientationMask m : orientation_octagon_sets(g).valid) {
        auto lib = keys(search_colourings(problem(g, m, t1)));
        EXPECT_EQ(lib, brute_force_colourings(g, m, t1)) << "mask " << m;
        total += lib.size();
    }
    EXPECT_EQ(total, 24u);
}

TEST(Colouring, EngineMatchesOracleOnLiftedGraph)
{
    auto g = named_graph("G3_112");
    auto t9 = builtin("T9");
    auto masks = orientation_octagon_sets(g).valid;
    ASSERT_FALSE(masks.empty());
    for (std::size_t i = 0; i < masks.size(); ++i)
        EXPECT_EQ(keys(search_colourings(problem(g, masks[i], t9))), brute_force_colourings(g, masks[i], t9)) << "mask " << masks[i];
}

// A small presentation gives many partial matches and exercises the
// repeated-letter rule more often than the full ones do.
TEST(Colouring, EngineMatchesOracleOnSubPresentation)
{
    auto g = named_graph("G0_3345");
    auto t1 = builtin("T1");
    Presentation small{"S", 15, {t1.triangles[0], t1.triangles[1], t1.triangles[2], t1.triangles[3], t1.triangles[5], t1.triangles[13], t1.triangles[14]}};
    for (OrientationMask m : {0ull, 0x0f0full, 0x1111ull, 0xffffull})
        EXPECT_EQ(keys(search_colourings(problem(g, m, small))), brute_force_colourings(g, m, small)) << "mask " << m;
}

TEST(Colouring, ResultsObeyTheRules)
{
    auto g = named_graph("G3_112");
    for (const char* name : {"T1", "T9"}) {
        auto masks = orientation_octagon_sets(g).valid;
        auto p = problem(g, masks.front(), builtin(name));
        for (const auto& c : search_colourings(p)) expect_consistent(p, c);
    }
}

TEST(Colouring, ReferenceAssignmentCompletes)
{
    auto g = named_graph("G0_3345");
    auto t1 = builtin("T1");
    // Word index per vertex in the reference assignment.
    const std::vector<int> assigned{-1, 0, 1, 14, 1, 2, 5, 3, 13, 13, 3, 5, 2, 1, 14, 1, 0};
    std::vector<std::optional<int>> partial(17);
    for (int v = 1; v <= 16; ++v) partial[static_cast<std::size_t>(v)] = assigned[static_cast<std::size_t>(v)];
    std::size_t found = 0;
    for (OrientationMask m : orientation_octagon_sets(g).valid) {
        auto p = problem(g, m, t1);
        auto cs = complete_partial(p, partial);
        for (const auto& c : cs) {
            for (int v = 1; v <= 16; ++v) EXPECT_EQ(c.uses[static_cast<std::size_t>(v)].triangle, assigned[static_cast<std::size_t>(v)]);
            expect_consistent(p, c);
        }
        found += cs.size();
    }
    EXPECT_GT(found, 0u);
}

TEST(Colouring, TwoPhaseEngineAgrees)
{
    auto g = named_graph("G0_3345");
    auto t1 = builtin("T1");
    auto labellings = orientation_free_labellings(g, t1);
    for (OrientationMask m : orientation_octagon_sets(g).valid) {
        auto p = problem(g, m, t1);
        EXPECT_EQ(keys(two_phase_colourings(p, labellings)), keys(search_colourings(p))) << "mask " << m;
    }
}

// Reversing every rotation and every reading direction leaves the labels unchanged.
TEST(Colouring, GlobalReversalIsABijection)
{
    auto g = named_graph("G3_112");
    auto t9 = builtin("T9");
    for (OrientationMask m : orientation_octagon_sets(g).valid) {
        auto a = search_colourings(problem(g, m, t9, ReadingConvention::class_a_forward));
        auto b = search_colourings(problem(g, m ^ 0xffff, t9, ReadingConvention::class_b_forward));
        ASSERT_EQ(keys(a), keys(b)) << "mask " << m;
    }
}

TEST(Colouring, LimitAndWorkers)
{
    auto g = named_graph("G3_112");
    auto t1 = builtin("T1");
    OrientationMask hit = 0;
    std::vector<Colouring> all;
    for (OrientationMask m : orientation_octagon_sets(g).valid) {
        all = search_colourings(problem(g, m, t1));
        if (all.size() > 1) {
            hit = m;
            break;
        }
    }
    ASSERT_GT(all.size(), 1u);
    SearchOptions one;
    one.limit = 1;
    EXPECT_EQ(search_colourings(problem(g, hit, t1), one).size(), 1u);
    SearchOptions par;
    par.jobs = 4;
    SearchStats stats;
    EXPECT_EQ(keys(search_colourings(problem(g, hit, t1), par, &stats)), keys(all));
    EXPECT_EQ(stats.seeds, 45u);
}

TEST(Colouring, NoColouringForUnusablePresentation)
{
    auto g = named_graph("G0_3621");
    auto t21 = builtin("T21");
    for (OrientationMask m : orientation_octagon_sets(g).valid) EXPECT_TRUE(search_colourings(problem(g, m, t21)).empty());
}

TEST(Colouring, RejectsNonBipartiteInput)
{
    Multigraph k4(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    EXPECT_THROW(search_colourings(problem(k4, 0, builtin("T1"))), std::invalid_argument);
    Multigraph path(3, {{1, 2}, {2, 3}});
    EXPECT_THROW(search_colourings(problem(path, 0, builtin("T1"))), std::invalid_argument);
}
