#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "multigraph.hpp"
#include "parallel.hpp"

namespace periodic {

/// Sizes of a closed orientable genus-g surface tiled by octagons made of
/// eight triangles each, and of its 3-valent dual graph.
struct SurfaceBudget {
    int genus = 0;
    int octagons = 0;       // F = 6g - 6
    int dual_vertices = 0;  // 16(g - 1), one per triangle
    int dual_edges = 0;     // 24(g - 1)

    bool feasible() const { return octagons > 0; }
    int euler_characteristic() const { return dual_vertices - dual_edges + octagons; }
};

inline SurfaceBudget surface_budget(int genus)
{
    if (genus < 0) throw std::invalid_argument("genus must be non-negative");
    return {genus, 6 * genus - 6, 16 * (genus - 1), 24 * (genus - 1)};
}

/// A directed traversal of one edge: dart 2e goes from edge(e).u to edge(e).v,
/// dart 2e+1 the other way.
using Dart = int;

inline int dart_edge(Dart d) { return d >> 1; }
inline Dart reverse_dart(Dart d) { return d ^ 1; }
inline int dart_tail(const Multigraph& g, Dart d) { return d & 1 ? g.edge(dart_edge(d)).v : g.edge(dart_edge(d)).u; }
inline int dart_head(const Multigraph& g, Dart d) { return d & 1 ? g.edge(dart_edge(d)).u : g.edge(dart_edge(d)).v; }
inline Dart dart_from(const Multigraph& g, int edge, int tail) { return 2 * edge + (g.edge(edge).u == tail ? 0 : 1); }

/// Vertex orientation bits: bit v-1 set means vertex v uses its reference
/// cyclic order (ascending neighbour, edge id) reversed.
using OrientationMask = std::uint64_t;

/// One orientation per vertex of a 3-regular multigraph.
class RotationSystem {
public:
    RotationSystem(const Multigraph& g, OrientationMask mask) : g_(&g), mask_(mask)
    {
        if (!g.is_regular(3)) throw std::invalid_argument("rotation systems are defined for 3-regular graphs");
        if (g.order() > 64) throw std::invalid_argument("orientation masks hold at most 64 vertices");
    }

    const Multigraph& graph() const { return *g_; }
    OrientationMask mask() const { return mask_; }
    bool reversed(int v) const { return (mask_ >> (v - 1)) & 1; }

    /// Edge-ends of v in oriented cyclic order.
    std::array<Multigraph::EdgeEnd, 3> cyclic_order(int v) const
    {
        auto e = g_->ends(v);
        if (reversed(v)) return {e[0], e[2], e[1]};
        return {e[0], e[1], e[2]};
    }

    /// Dart leaving the head of d along the edge-end after d's edge in the head's cyclic order.
    Dart face_successor(Dart d) const
    {
        int v = dart_head(*g_, d);
        auto order = cyclic_order(v);
        int e = dart_edge(d);
        for (int i = 0; i < 3; ++i)
            if (order[static_cast<std::size_t>(i)].edge == e) return dart_from(*g_, order[static_cast<std::size_t>((i + 1) % 3)].edge, v);
        throw std::logic_error("dart not incident to its head");
    }

    RotationSystem reversed_globally() const
    {
        OrientationMask all = g_->order() == 64 ? ~OrientationMask{0} : ((OrientationMask{1} << g_->order()) - 1);
        return RotationSystem(*g_, mask_ ^ all);
    }

private:
    const Multigraph* g_;
    OrientationMask mask_;
};

/// A face as the cyclic sequence of darts traversed.
struct Face {
    std::vector<Dart> darts;

    std::size_t length() const { return darts.size(); }

    std::vector<int> vertices(const Multigraph& g) const
    {
        std::vector<int> out;
        out.reserve(darts.size());
        for (Dart d : darts) out.push_back(dart_tail(g, d));
        return out;
    }

    std::vector<int> edge_ids() const
    {
        std::vector<int> out;
        out.reserve(darts.size());
        for (Dart d : darts) out.push_back(dart_edge(d));
        return out;
    }
};

/// Orbits of the face successor, each starting at its smallest dart, ordered by that dart.
inline std::vector<Face> trace_faces(const RotationSystem& r)
{
    const int darts = 2 * r.graph().size();
    std::vector<char> seen(static_cast<std::size_t>(darts), 0);
    std::vector<Face> faces;
    for (Dart start = 0; start < darts; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        Face f;
        Dart d = start;
        do {
            seen[static_cast<std::size_t>(d)] = 1;
            f.darts.push_back(d);
            d = r.face_successor(d);
        } while (d != start);
        faces.push_back(std::move(f));
    }
    return faces;
}

/// Genus from Euler's formula for the embedding given by r (connected graph assumed).
inline int embedding_genus(const RotationSystem& r)
{
    const auto faces = trace_faces(r);
    int chi = r.graph().order() - r.graph().size() + static_cast<int>(faces.size());
    return (2 - chi) / 2;
}

enum class Provenance { orientation, dfs };

/// Six closed walks of length eight covering every dart once.
struct OctagonSet {
    std::vector<Face> faces;
    Provenance provenance = Provenance::orientation;
    std::vector<OrientationMask> orientations;  // every assignment tracing exactly these faces

    /// Key under the set-equality convention: each walk as an undirected
    /// cyclic sequence of edge ids (least rotation of either direction), sorted.
    std::vector<std::vector<int>> key() const;
};

/// Least rotation of seq or of its reverse.
inline std::vector<int> undirected_cyclic_key(const std::vector<int>& seq)
{
    std::vector<int> best;
    auto consider = [&](const std::vector<int>& s) {
        const std::size_t n = s.size();
        for (std::size_t r = 0; r < n; ++r) {
            std::vector<int> rot(n);
            for (std::size_t i = 0; i < n; ++i) rot[i] = s[(r + i) % n];
            if (best.empty() || rot < best) best = std::move(rot);
        }
    };
    consider(seq);
    consider(std::vector<int>(seq.rbegin(), seq.rend()));
    return best;
}

inline std::vector<std::vector<int>> OctagonSet::key() const
{
    std::vector<std::vector<int>> out;
    out.reserve(faces.size());
    for (const auto& f : faces) out.push_back(undirected_cyclic_key(f.edge_ids()));
    std::sort(out.begin(), out.end());
    return out;
}

/// Same convention on vertex sequences; used to compare against reference listings.
inline std::vector<std::vector<int>> vertex_key(const Multigraph& g, const std::vector<Face>& faces)
{
    std::vector<std::vector<int>> out;
    for (const auto& f : faces) out.push_back(undirected_cyclic_key(f.vertices(g)));
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Precomputed successor tables for fast orientation sweeps.
class FaceTracer {
public:
    explicit FaceTracer(const Multigraph& g) : g_(g), darts_(2 * g.size())
    {
        succ_[0].resize(static_cast<std::size_t>(darts_));
        succ_[1].resize(static_cast<std::size_t>(darts_));
        head_.resize(static_cast<std::size_t>(darts_));
        for (Dart d = 0; d < darts_; ++d) {
            int v = dart_head(g, d);
            head_[static_cast<std::size_t>(d)] = v - 1;
            auto e = g.ends(v);
            int i = 0;
            while (e[static_cast<std::size_t>(i)].edge != dart_edge(d)) ++i;
            succ_[0][static_cast<std::size_t>(d)] = dart_from(g, e[static_cast<std::size_t>((i + 1) % 3)].edge, v);
            succ_[1][static_cast<std::size_t>(d)] = dart_from(g, e[static_cast<std::size_t>((i + 2) % 3)].edge, v);
        }
    }

    Dart next(Dart d, OrientationMask mask) const
    {
        auto h = static_cast<std::size_t>(d);
        return succ_[(mask >> head_[h]) & 1][h];
    }

    /// True if every face of the orientation has exactly `length` darts.
    bool all_faces_of_length(OrientationMask mask, int length) const
    {
        std::uint64_t seen[4] = {0, 0, 0, 0};
        for (Dart start = 0; start < darts_; ++start) {
            if ((seen[start >> 6] >> (start & 63)) & 1) continue;
            Dart d = start;
            int len = 0;
            do {
                seen[d >> 6] |= std::uint64_t{1} << (d & 63);
                d = next(d, mask);
                if (++len > length) return false;
            } while (d != start);
            if (len != length) return false;
        }
        return true;
    }

private:
    const Multigraph& g_;
    int darts_;
    std::array<std::vector<Dart>, 2> succ_;
    std::vector<int> head_;
};

}  // namespace detail

/// Assignments in [0, 2^V) whose faces all have length 8, and the distinct face sets they trace.
struct OrientationSweep {
    std::vector<OrientationMask> valid;  // ascending
    std::vector<OctagonSet> sets;        // distinct face sets, ordered by key
};

/// Every vertex-orientation assignment whose traced faces are octagons, grouped
/// into distinct OctagonSets. Sweeps masks in contiguous ranges across workers.
inline OrientationSweep orientation_octagon_sets(const Multigraph& g, unsigned jobs = 1)
{
    OrientationSweep out;
    if (!g.is_regular(3) || g.order() > 30 || g.size() % 4 != 0) return out;
    detail::FaceTracer tracer(g);
    const OrientationMask total = OrientationMask{1} << g.order();
    const std::size_t chunks = 64;
    auto parts = parallel_map(chunks, jobs, [&](std::size_t c) {
        std::vector<OrientationMask> found;
        OrientationMask lo = total * c / chunks, hi = total * (c + 1) / chunks;
        for (OrientationMask m = lo; m < hi; ++m)
            if (tracer.all_faces_of_length(m, 8)) found.push_back(m);
        return found;
    });
    for (auto& p : parts) out.valid.insert(out.valid.end(), p.begin(), p.end());

    std::vector<std::pair<std::vector<std::vector<int>>, OctagonSet>> keyed;
    for (OrientationMask m : out.valid) {
        OctagonSet s;
        s.faces = trace_faces(RotationSystem(g, m));
        s.provenance = Provenance::orientation;
        s.orientations.push_back(m);
        keyed.emplace_back(s.key(), std::move(s));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second.orientations.front() < b.second.orientations.front();
    });
    for (auto& [k, s] : keyed) {
        if (!out.sets.empty() && out.sets.back().key() == k) {
            out.sets.back().orientations.push_back(s.orientations.front());
            continue;
        }
        out.sets.push_back(std::move(s));
    }
    return out;
}

}  // namespace periodic
