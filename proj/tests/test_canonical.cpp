#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <periodic/canonical.hpp>
#include <periodic/octagons.hpp>

#include "support/oracles.hpp"

using namespace periodic;

namespace {

Multigraph shuffled(const Multigraph& g, std::mt19937& rng)
{
    std::vector<int> perm(static_cast<std::size_t>(g.order()) + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    return g.relabelled(perm);
}

}  // namespace

TEST(Canonical, FormIsInvariantUnderRelabelling)
{
    std::mt19937 rng(7);
    for (const auto& ng : named_graphs()) {
        Multigraph g(16, ng.edges);
        auto f = canonical_form(g);
        for (int k = 0; k < 20; ++k) EXPECT_EQ(canonical_form(shuffled(g, rng)), f) << ng.name;
    }
}

TEST(Canonical, SeparatesAllReferenceGraphs)
{
    const auto& list = named_graphs();
    for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = i + 1; j < list.size(); ++j)
            EXPECT_FALSE(is_isomorphic(Multigraph(16, list[i].edges), Multigraph(16, list[j].edges))) << i << " vs " << j;
}

TEST(Canonical, AgreesWithBacktrackingOracleOnRandomCubicPairs)
{
    // Random multigraph pairs from a configuration model: the verdicts of the
    // canonical form and of the plain backtracking test must coincide.
    std::mt19937 rng(11);
    auto random_cubic = [&](int n) {
        for (;;) {
            std::vector<int> stubs;
            for (int v = 1; v <= n; ++v) stubs.insert(stubs.end(), 3, v);
            std::shuffle(stubs.begin(), stubs.end(), rng);
            Multigraph g(n);
            bool ok = true;
            for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
                if (stubs[i] == stubs[i + 1] || (g.multiplicity(stubs[i], stubs[i + 1]) >= 2)) ok = false;
                else g.add_edge(stubs[i], stubs[i + 1]);
            }
            if (ok) return g;
        }
    };
    int same = 0;
    for (int k = 0; k < 300; ++k) {
        auto a = random_cubic(8), b = random_cubic(8);
        bool lib = is_isomorphic(a, b);
        EXPECT_EQ(lib, oracle::isomorphic(oracle::to_matrix(a), oracle::to_matrix(b)));
        same += lib;
    }
    EXPECT_GT(same, 0) << "sample should contain some isomorphic pairs";
}

TEST(Canonical, RelabelGivesCanonicalRepresentative)
{
    std::mt19937 rng(3);
    auto g = named_graph("G1_84");
    auto c = canonical_relabel(g);
    EXPECT_TRUE(is_isomorphic(c, g));
    EXPECT_EQ(canonical_relabel(shuffled(g, rng)), c);
    EXPECT_EQ(canonical_form(g).hex(), canonical_form(c).hex());
}
