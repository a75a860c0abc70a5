#pragma once

// Brute-force reference implementations. None of this touches the library's
// canonical labelling, generators, rotation systems or colouring search; the
// only shared types are plain containers and the presentation data.

#include <algorithm>
#include <array>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <periodic/multigraph.hpp>
#include <periodic/presentations.hpp>

namespace periodic::oracle {

/// Symmetric matrix of edge multiplicities, vertices 0..n-1.
using AdjMatrix = std::vector<std::vector<int>>;

inline AdjMatrix to_matrix(const Multigraph& g)
{
    AdjMatrix a(static_cast<std::size_t>(g.order()), std::vector<int>(static_cast<std::size_t>(g.order()), 0));
    for (int e = 0; e < g.size(); ++e) {
        auto [u, v] = g.edge(e);
        ++a[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(v - 1)];
        ++a[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(u - 1)];
    }
    return a;
}

inline Multigraph from_matrix(const AdjMatrix& a)
{
    Multigraph g(static_cast<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            for (int k = 0; k < a[i][j]; ++k) g.add_edge(static_cast<int>(i + 1), static_cast<int>(j + 1));
    return g;
}

inline bool matrix_connected(const AdjMatrix& a)
{
    std::vector<char> seen(a.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < a.size(); ++w)
            if (a[v][w] && !seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == a.size();
}

inline bool matrix_bipartite(const AdjMatrix& a)
{
    std::vector<int> side(a.size(), -1);
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < a.size(); ++w) {
                if (!a[v][w]) continue;
                if (side[w] < 0) {
                    side[w] = 1 - side[v];
                    stack.push_back(w);
                } else if (side[w] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Colour refinement: equal multisets of colours for isomorphic graphs.
inline std::vector<std::uint64_t> refinement_colours(const AdjMatrix& a)
{
    const std::size_t n = a.size();
    std::vector<std::uint64_t> col(n), next(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) col[v] += static_cast<std::uint64_t>(a[v][w]);
    std::vector<std::uint64_t> parts;
    for (int round = 0; round < 3; ++round) {
        for (std::size_t v = 0; v < n; ++v) {
            parts.clear();
            for (std::size_t w = 0; w < n; ++w)
                if (a[v][w]) parts.push_back(col[w] * 31 + static_cast<std::uint64_t>(a[v][w]));
            std::sort(parts.begin(), parts.end());
            std::uint64_t h = col[v] * 0x9e3779b97f4a7c15ull + 1;
            for (auto x : parts) h = (h ^ x) * 0x100000001b3ull + (h >> 29);
            next[v] = h;
        }
        col.swap(next);
    }
    return col;
}

inline std::vector<std::uint64_t> invariant(const std::vector<std::uint64_t>& colours)
{
    auto c = colours;
    std::sort(c.begin(), c.end());
    return c;
}

/// Plain backtracking isomorphism test, vertex by vertex, restricted to
/// vertices of equal refinement colour.
inline bool isomorphic(const AdjMatrix& a, const std::vector<std::uint64_t>& ca, const AdjMatrix& b, const std::vector<std::uint64_t>& cb)
{
    const std::size_t n = a.size();
    if (b.size() != n) return false;
    std::vector<int> map(n, -1), used(n, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t v) {
        if (v == n) return true;
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w] || ca[v] != cb[w]) continue;
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u) ok = a[v][u] == b[w][static_cast<std::size_t>(map[u])];
            if (!ok) continue;
            map[v] = static_cast<int>(w);
            used[w] = 1;
            if (go(v + 1)) return true;
            used[w] = 0;
        }
        map[v] = -1;
        return false;
    };
    return go(0);
}

inline bool isomorphic(const AdjMatrix& a, const AdjMatrix& b) { return isomorphic(a, refinement_colours(a), b, refinement_colours(b)); }

/// Keeps one matrix per isomorphism class.
class IsoClasses {
public:
    bool insert(const AdjMatrix& a)
    {
        auto ca = refinement_colours(a);
        auto& bucket = buckets_[invariant(ca)];
        for (const auto& [b, cb] : bucket)
            if (isomorphic(a, ca, b, cb)) return false;
        bucket.push_back({a, std::move(ca)});
        return true;
    }
    std::size_t size() const
    {
        std::size_t s = 0;
        for (const auto& [k, v] : buckets_) s += v.size();
        return s;
    }
    std::vector<AdjMatrix> all() const
    {
        std::vector<AdjMatrix> out;
        for (const auto& [k, v] : buckets_)
            for (const auto& rep : v) out.push_back(rep.first);
        return out;
    }
    bool contains(const AdjMatrix& a) const
    {
        auto ca = refinement_colours(a);
        auto it = buckets_.find(invariant(ca));
        if (it == buckets_.end()) return false;
        for (const auto& [b, cb] : it->second)
            if (isomorphic(a, ca, b, cb)) return true;
        return false;
    }

private:
    std::map<std::vector<std::uint64_t>, std::vector<std::pair<AdjMatrix, std::vector<std::uint64_t>>>> buckets_;
};

/// Every labelled simple graph on n vertices whose degree sequence is
/// `degrees` exactly (vertex i gets degrees[i]), filtered and deduplicated.
/// Fixing the sequence is a relabelling, so no class is lost. For a regular
/// sequence vertex 0 may also be joined to 1..d outright.
inline IsoClasses brute_force_graphs(const std::vector<int>& degrees, bool connected, bool bipartite)
{
    const bool regular = std::all_of(degrees.begin(), degrees.end(), [&](int d) { return d == degrees.front(); });
    const std::size_t n = degrees.size();
    AdjMatrix a(n, std::vector<int>(n, 0));
    std::vector<int> left = degrees;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    IsoClasses classes;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == pairs.size()) {
            for (int l : left)
                if (l) return;
            if (connected && !matrix_connected(a)) return;
            if (bipartite && !matrix_bipartite(a)) return;
            classes.insert(a);
            return;
        }
        auto [i, j] = pairs[k];
        if (regular && i == 0) {
            bool want = static_cast<int>(j) <= degrees[0];
            if (want) {
                a[0][j] = a[j][0] = 1;
                --left[0];
                --left[j];
            }
            go(k + 1);
            if (want) {
                ++left[0];
                ++left[j];
                a[0][j] = a[j][0] = 0;
            }
            return;
        }
        // Vertex i has no later pairs after (i, n-1): it must be full by then.
        if (left[i] > static_cast<int>(n - 1 - j) + 1) return;
        if (left[i] && left[j]) {
            a[i][j] = a[j][i] = 1;
            --left[i];
            --left[j];
            go(k + 1);
            ++left[i];
            ++left[j];
            a[i][j] = a[j][i] = 0;
        }
        if (left[i] <= static_cast<int>(n - 1 - j)) go(k + 1);
    };
    go(0);
    return classes;
}

inline IsoClasses brute_force_cubic(int n, bool bipartite) { return brute_force_graphs(std::vector<int>(static_cast<std::size_t>(n), 3), true, bipartite); }

/// Connected bipartite graphs with n vertices, m edges and degrees in {2, 3}.
inline IsoClasses brute_force_deg23_bipartite(int n, int m)
{
    int threes = 2 * m - 2 * n;
    if (threes < 0 || threes > n) return {};
    std::vector<int> deg(static_cast<std::size_t>(n), 2);
    std::fill(deg.begin(), deg.begin() + threes, 3);
    return brute_force_graphs(deg, true, true);
}

/// Doubles the edge between paired degree-2 vertices when every degree-2
/// vertex has exactly one degree-2 neighbour.
inline std::optional<AdjMatrix> brute_force_lift(const AdjMatrix& a)
{
    const std::size_t n = a.size();
    auto deg = [&](std::size_t v) {
        int d = 0;
        for (std::size_t w = 0; w < n; ++w) d += a[v][w];
        return d;
    };
    AdjMatrix out = a;
    for (std::size_t v = 0; v < n; ++v) {
        if (deg(v) != 2) continue;
        int partners = 0;
        for (std::size_t w = 0; w < n; ++w)
            if (a[v][w] && deg(w) == 2) {
                ++partners;
                out[v][w] = 2;
            }
        if (partners != 1) return std::nullopt;
    }
    return out;
}

inline IsoClasses brute_force_lifted(int n, int doubles)
{
    IsoClasses out;
    int m = 3 * n / 2 - doubles;
    for (const auto& a : brute_force_deg23_bipartite(n, m).all())
        if (auto l = brute_force_lift(a)) out.insert(*l);
    return out;
}

// Colouring oracle --------------------------------------------------------------

/// A colouring reduced to what any convention agrees on: the triangle at each
/// vertex (1..n) and the label on each edge.
struct ColouringKey {
    std::vector<int> triangles;
    std::vector<int> labels;
    friend auto operator<=>(const ColouringKey&, const ColouringKey&) = default;
};

/// Every colouring of g under one orientation mask, by trying all 3T uses at
/// each vertex in breadth-first order and checking each edge once both ends
/// are set. The order only affects pruning.
/// Vertex 1's class reads forwards; an edge whose two ends use the same
/// triangle must sit at different positions of the word.
inline std::vector<ColouringKey> brute_force_colourings(const Multigraph& g, std::uint64_t mask, const Presentation& p)
{
    const int n = g.order(), m = g.size();
    std::vector<std::array<int, 3>> rot(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) {
        std::vector<std::pair<int, int>> inc;
        for (int e = 0; e < m; ++e) {
            if (g.edge(e).u == v) inc.push_back({g.edge(e).v, e});
            if (g.edge(e).v == v) inc.push_back({g.edge(e).u, e});
        }
        std::sort(inc.begin(), inc.end());
        bool rev = (mask >> (v - 1)) & 1;
        rot[static_cast<std::size_t>(v)] = {inc[0].second, rev ? inc[2].second : inc[1].second, rev ? inc[1].second : inc[2].second};
    }
    std::vector<int> side(static_cast<std::size_t>(n) + 1, -1);
    side[1] = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (int e = 0; e < m; ++e) {
            auto [u, v] = g.edge(e);
            if (side[static_cast<std::size_t>(u)] >= 0 && side[static_cast<std::size_t>(v)] < 0) {
                side[static_cast<std::size_t>(v)] = 1 - side[static_cast<std::size_t>(u)];
                changed = true;
            } else if (side[static_cast<std::size_t>(v)] >= 0 && side[static_cast<std::size_t>(u)] < 0) {
                side[static_cast<std::size_t>(u)] = 1 - side[static_cast<std::size_t>(v)];
                changed = true;
            }
        }
    }
    struct Pick {
        int triangle = -1;
        std::array<int, 3> label{}, pos{};  // by rotation slot
    };
    std::vector<Pick> pick(static_cast<std::size_t>(n) + 1);
    std::vector<ColouringKey> out;
    auto slot_of = [&](int v, int e) {
        const auto& r = rot[static_cast<std::size_t>(v)];
        return static_cast<std::size_t>(std::find(r.begin(), r.end(), e) - r.begin());
    };
    std::vector<int> order{1}, rank(static_cast<std::size_t>(n) + 1, 0);
    rank[1] = 1;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int e = 0; e < m; ++e) {
            auto [a, b] = g.edge(e);
            int w = a == order[k] ? b : b == order[k] ? a : 0;
            if (w && !rank[static_cast<std::size_t>(w)]) {
                order.push_back(w);
                rank[static_cast<std::size_t>(w)] = static_cast<int>(order.size());
            }
        }
    std::function<void(int)> go = [&](int step) {
        if (step == n) {
            ColouringKey k;
            k.triangles.push_back(-1);
            for (int x = 1; x <= n; ++x) k.triangles.push_back(pick[static_cast<std::size_t>(x)].triangle);
            for (int e = 0; e < m; ++e) k.labels.push_back(pick[static_cast<std::size_t>(g.edge(e).u)].label[slot_of(g.edge(e).u, e)]);
            out.push_back(std::move(k));
            return;
        }
        const int v = order[static_cast<std::size_t>(step)];
        bool backwards = side[static_cast<std::size_t>(v)] == 1;
        for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t)
            for (int o = 0; o < 3; ++o) {
                auto& pk = pick[static_cast<std::size_t>(v)];
                pk.triangle = t;
                for (int i = 0; i < 3; ++i) {
                    int k = ((backwards ? o - i : o + i) % 3 + 3) % 3;
                    pk.pos[static_cast<std::size_t>(i)] = k;
                    pk.label[static_cast<std::size_t>(i)] = p.triangles[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
                }
                bool ok = true;
                for (int e = 0; e < m && ok; ++e) {
                    auto [a, b] = g.edge(e);
                    int w = a == v ? b : b == v ? a : 0;
                    if (!w || rank[static_cast<std::size_t>(w)] > rank[static_cast<std::size_t>(v)]) continue;
                    const auto& pw = pick[static_cast<std::size_t>(w)];
                    auto sv = slot_of(v, e), sw = slot_of(w, e);
                    if (pk.label[sv] != pw.label[sw]) ok = false;
                    if (pk.triangle == pw.triangle && pk.pos[sv] == pw.pos[sw]) ok = false;
                }
                if (ok) go(step + 1);
            }
        pick[static_cast<std::size_t>(v)].triangle = -1;
    };
    go(0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace periodic::oracle
