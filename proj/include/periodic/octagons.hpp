#pragma once

#include <optional>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "multigraph.hpp"
#include "octagon_dfs.hpp"
#include "surface.hpp"

namespace periodic {

/// For every parallel pair {e1, e2} between u and v: the rotation at u turns
/// e1 into e2 exactly when the rotation at v does. Drawn in the plane with the
/// pair side by side, this is the two endpoints carrying opposite orientations;
/// equal orientations would close the pair into a face of length two.
inline bool double_edges_opposite(const RotationSystem& r)
{
    const auto& g = r.graph();
    for (int e1 = 0; e1 < g.size(); ++e1) {
        const auto [u, v] = g.edge(e1);
        Dart at_v = dart_from(g, e1, u);  // u -> v, turns at v
        Dart at_u = dart_from(g, e1, v);  // v -> u, turns at u
        int next_v = dart_edge(r.face_successor(at_v));
        int next_u = dart_edge(r.face_successor(at_u));
        bool pair_v = next_v != e1 && g.other_end(next_v, v) == u;
        bool pair_u = next_u != e1 && g.other_end(next_u, u) == v;
        if (g.multiplicity(u, v) > 1 && pair_u != pair_v) return false;
    }
    return true;
}

struct FilterResult {
    std::vector<OctagonSet> kept;  // realised by an orientation with opposite double-edge endpoints
    bool candidate() const { return !kept.empty(); }
};

/// Keeps the sets that arise from a vertex orientation in which the endpoints
/// of every double edge are opposite. Graphs without double edges keep every
/// orientation-realisable set.
inline FilterResult double_edge_orientation_filter(const Multigraph& g, const std::vector<OctagonSet>& sets)
{
    FilterResult out;
    for (const auto& s : sets) {
        auto mask = realising_orientation(g, s.faces);
        if (!mask || !double_edges_opposite(RotationSystem(g, *mask))) continue;
        OctagonSet kept = s;
        kept.orientations = {*mask};
        out.kept.push_back(std::move(kept));
    }
    return out;
}

/// Reference dual graphs by name. Simple ones are the union of consecutive
/// pairs of their reference octagons; the lifted ones are the orientation
/// survivors. Within each d=2 pair the reference data cannot tell the two
/// graphs apart, so both carry the pair's joint name.
struct NamedGraph {
    std::string name;
    std::vector<std::pair<int, int>> edges;
};

inline const std::vector<NamedGraph>& named_graphs()
{
    static const std::vector<NamedGraph> list{
        {"G0_3345", {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {3, 5}, {3, 6}, {4, 7}, {4, 8}, {5, 9}, {6, 10}, {7, 9},
                     {7, 11}, {8, 10}, {8, 12}, {9, 13}, {10, 13}, {11, 14}, {11, 15}, {12, 14}, {12, 15}, {13, 16}, {14, 16}, {15, 16}}},
        {"G0_3538", {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {3, 5}, {3, 7}, {4, 6}, {4, 8}, {5, 9}, {6, 10}, {7, 10},
                     {7, 11}, {8, 9}, {8, 12}, {9, 13}, {10, 14}, {11, 13}, {11, 15}, {12, 14}, {12, 15}, {13, 16}, {14, 16}, {15, 16}}},
        {"G0_3621", {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {3, 5}, {3, 7}, {4, 6}, {4, 8}, {5, 9}, {6, 10}, {7, 11},
                     {7, 12}, {8, 11}, {8, 13}, {9, 14}, {9, 15}, {10, 14}, {10, 16}, {11, 14}, {12, 15}, {12, 16}, {13, 15}, {13, 16}}},
        {"G0_4002", {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {3, 5}, {3, 7}, {4, 8}, {4, 9}, {5, 10}, {6, 11}, {6, 12},
                     {7, 13}, {7, 14}, {8, 11}, {8, 13}, {9, 12}, {9, 14}, {10, 15}, {10, 16}, {11, 15}, {12, 16}, {13, 15}, {14, 16}}},
        {"G0_4060", {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {3, 7}, {3, 8}, {4, 9}, {4, 10}, {5, 11}, {5, 12}, {6, 13},
                     {6, 14}, {7, 11}, {7, 13}, {8, 12}, {8, 15}, {9, 12}, {9, 14}, {10, 13}, {10, 15}, {11, 16}, {14, 16}, {15, 16}}},
        {"G1_61", {{1, 2}, {1, 2}, {1, 15}, {2, 16}, {3, 4}, {3, 5}, {3, 7}, {4, 6}, {4, 8}, {5, 6}, {5, 10}, {6, 9},
                   {7, 8}, {7, 11}, {8, 12}, {9, 11}, {9, 13}, {10, 12}, {10, 14}, {11, 15}, {12, 16}, {13, 14}, {13, 15}, {14, 16}}},
        {"G1_84", {{1, 2}, {1, 2}, {1, 15}, {2, 16}, {3, 4}, {3, 7}, {3, 8}, {4, 5}, {4, 6}, {5, 8}, {5, 11}, {6, 7},
                   {6, 12}, {7, 13}, {8, 14}, {9, 10}, {9, 11}, {9, 12}, {10, 13}, {10, 14}, {11, 15}, {12, 15}, {13, 16}, {14, 16}}},
        {"G2_20|G2_25", {{1, 4}, {1, 4}, {1, 16}, {2, 3}, {2, 3}, {2, 13}, {3, 14}, {4, 15}, {5, 9}, {5, 10}, {5, 16}, {6, 10},
                         {6, 12}, {6, 16}, {7, 9}, {7, 11}, {7, 14}, {8, 11}, {8, 12}, {8, 14}, {9, 13}, {10, 13}, {11, 15}, {12, 15}}},
        {"G2_20|G2_25", {{1, 4}, {1, 4}, {1, 16}, {2, 3}, {2, 3}, {2, 13}, {3, 14}, {4, 15}, {5, 7}, {5, 12}, {5, 16}, {6, 7},
                         {6, 11}, {6, 16}, {7, 15}, {8, 10}, {8, 11}, {8, 13}, {9, 10}, {9, 12}, {9, 13}, {10, 14}, {11, 14}, {12, 15}}},
        {"G2_78|G2_84", {{1, 4}, {1, 4}, {1, 13}, {2, 3}, {2, 3}, {2, 16}, {3, 15}, {4, 14}, {5, 7}, {5, 8}, {5, 12}, {6, 9},
                         {6, 10}, {6, 11}, {7, 10}, {7, 14}, {8, 9}, {8, 16}, {9, 15}, {10, 13}, {11, 13}, {11, 15}, {12, 14}, {12, 16}}},
        {"G2_78|G2_84", {{1, 4}, {1, 4}, {1, 13}, {2, 3}, {2, 3}, {2, 16}, {3, 15}, {4, 14}, {5, 7}, {5, 8}, {5, 12}, {6, 9},
                         {6, 10}, {6, 11}, {7, 9}, {7, 14}, {8, 10}, {8, 16}, {9, 15}, {10, 13}, {11, 13}, {11, 15}, {12, 14}, {12, 16}}},
        {"G3_112", {{1, 2}, {1, 2}, {1, 11}, {2, 16}, {3, 6}, {3, 6}, {3, 15}, {4, 5}, {4, 5}, {4, 14}, {5, 13}, {6, 12},
                    {7, 11}, {7, 12}, {7, 13}, {8, 11}, {8, 12}, {8, 13}, {9, 14}, {9, 15}, {9, 16}, {10, 14}, {10, 15}, {10, 16}}},
    };
    return list;
}

inline Multigraph named_graph(const std::string& name)
{
    for (const auto& ng : named_graphs())
        if (ng.name == name) return Multigraph(16, ng.edges);
    throw std::invalid_argument("unknown named graph '" + name + "'");
}

/// Name of the reference graph isomorphic to g, or "unnamed".
inline std::string identify_named_graph(const Multigraph& g)
{
    if (g.order() != 16 || !g.is_regular(3)) return "unnamed";
    static const auto forms = [] {
        std::vector<std::pair<CanonicalForm, std::string>> out;
        for (const auto& ng : named_graphs()) out.emplace_back(canonical_form(Multigraph(16, ng.edges)), ng.name);
        return out;
    }();
    auto f = canonical_form(g);
    for (const auto& [form, name] : forms)
        if (form == f) return name;
    return "unnamed";
}

/// Per-graph octagon summary shared by the CLI and the pipeline.
struct OctagonSummary {
    std::string name;
    std::size_t valid_assignments = 0;  // orientation masks tracing six octagons
    std::size_t orientation_sets = 0;   // distinct sets under the undirected key
    std::size_t dfs_directed = 0;       // DFS walk sets, a set and its reversal counted apart
    std::size_t dfs_sets = 0;           // DFS sets under the undirected key
    std::size_t filtered_sets = 0;      // DFS sets surviving the double-edge filter
    OrientationSweep sweep;
};

inline OctagonSummary summarize_octagons(const Multigraph& g, bool run_dfs, bool run_orientation, unsigned jobs = 1)
{
    OctagonSummary s;
    s.name = identify_named_graph(g);
    if (run_orientation) {
        s.sweep = orientation_octagon_sets(g, jobs);
        s.valid_assignments = s.sweep.valid.size();
        s.orientation_sets = s.sweep.sets.size();
    }
    if (run_dfs) {
        auto d = dfs_octagon_sets(g);
        s.dfs_directed = d.directed_sets;
        s.dfs_sets = d.sets.size();
        s.filtered_sets = double_edge_orientation_filter(g, d.sets).kept.size();
    }
    return s;
}

}  // namespace periodic
