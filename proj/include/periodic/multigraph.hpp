#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace periodic {

/// Undirected loopless multigraph on vertices 1..n.
///
/// Edge identifiers are 0-based indices into edges() and never change once
/// assigned. For every vertex the incident edge-ends are kept sorted by
/// (neighbour, edge id); that order is the reference cyclic order used by
/// rotation systems.
class Multigraph {
public:
    struct Edge {
        int u;
        int v;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    struct EdgeEnd {
        int neighbour;
        int edge;
        friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
    };

    Multigraph() = default;

    explicit Multigraph(int n) : n_(n), ends_(static_cast<std::size_t>(n) + 1)
    {
        if (n < 0) throw std::invalid_argument("negative vertex count");
    }

    Multigraph(int n, const std::vector<std::pair<int, int>>& edges) : Multigraph(n)
    {
        edges_.reserve(edges.size());
        for (auto [u, v] : edges) add_edge(u, v);
    }

    int add_edge(int u, int v)
    {
        if (u < 1 || v < 1 || u > n_ || v > n_)
            throw std::out_of_range("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) throw std::invalid_argument("loops are not allowed (vertex " + std::to_string(u) + ")");
        if (u > v) std::swap(u, v);
        const int id = static_cast<int>(edges_.size());
        edges_.push_back({u, v});
        insert_end(u, {v, id});
        insert_end(v, {u, id});
        return id;
    }

    int order() const { return n_; }
    int size() const { return static_cast<int>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }

    std::span<const EdgeEnd> ends(int v) const { return ends_.at(static_cast<std::size_t>(v)); }

    int degree(int v) const { return static_cast<int>(ends(v).size()); }

    int other_end(int edge_id, int v) const
    {
        const Edge& e = edge(edge_id);
        return e.u == v ? e.v : e.u;
    }

    int multiplicity(int u, int v) const
    {
        int count = 0;
        for (const auto& end : ends(u))
            if (end.neighbour == v) ++count;
        return count;
    }

    bool is_simple() const
    {
        for (int v = 1; v <= n_; ++v) {
            auto e = ends(v);
            for (std::size_t i = 1; i < e.size(); ++i)
                if (e[i].neighbour == e[i - 1].neighbour) return false;
        }
        return true;
    }

    bool is_regular(int d) const
    {
        for (int v = 1; v <= n_; ++v)
            if (degree(v) != d) return false;
        return true;
    }

    /// Unordered vertex pairs joined by two or more edges, ascending.
    std::vector<std::pair<int, int>> parallel_pairs() const
    {
        std::vector<std::pair<int, int>> out;
        for (int v = 1; v <= n_; ++v) {
            auto e = ends(v);
            for (std::size_t i = 1; i < e.size(); ++i)
                if (e[i].neighbour == e[i - 1].neighbour && e[i].neighbour > v &&
                    (i < 2 || e[i - 2].neighbour != e[i].neighbour))
                    out.emplace_back(v, e[i].neighbour);
        }
        return out;
    }

    /// Same graph with vertex v renamed to perm[v] (perm is 1-indexed, perm[0] unused).
    Multigraph relabelled(std::span<const int> perm) const
    {
        Multigraph out(n_);
        for (const auto& e : edges_) out.add_edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
        return out;
    }

    /// Edge list sorted lexicographically, each pair with u < v.
    std::vector<std::pair<int, int>> sorted_edge_list() const
    {
        std::vector<std::pair<int, int>> out;
        out.reserve(edges_.size());
        for (const auto& e : edges_) out.emplace_back(e.u, e.v);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const Multigraph& a, const Multigraph& b)
    {
        return a.n_ == b.n_ && a.sorted_edge_list() == b.sorted_edge_list();
    }

private:
    void insert_end(int v, EdgeEnd end)
    {
        auto& list = ends_[static_cast<std::size_t>(v)];
        list.insert(std::upper_bound(list.begin(), list.end(), end), end);
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeEnd>> ends_;
};

/// Sorted non-increasing.
inline std::vector<int> degree_sequence(const Multigraph& g)
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(g.order()));
    for (int v = 1; v <= g.order(); ++v) out.push_back(g.degree(v));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline bool is_connected(const Multigraph& g)
{
    if (g.order() == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(g.order()) + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& end : g.ends(v))
            if (!seen[static_cast<std::size_t>(end.neighbour)]) {
                seen[static_cast<std::size_t>(end.neighbour)] = 1;
                ++reached;
                stack.push_back(end.neighbour);
            }
    }
    return reached == g.order();
}

enum class Side : std::uint8_t { A, B };

/// Two-colouring of a connected graph. Vertex 1 is always in class A.
struct Bipartition {
    std::vector<Side> side;  // indexed 1..n, side[0] unused

    Side operator[](int v) const { return side[static_cast<std::size_t>(v)]; }

    std::vector<int> members(Side s) const
    {
        std::vector<int> out;
        for (std::size_t v = 1; v < side.size(); ++v)
            if (side[v] == s) out.push_back(static_cast<int>(v));
        return out;
    }
};

/// An odd closed walk proving that no bipartition exists.
struct OddCycle {
    std::vector<int> walk;
};

struct BipartitionResult {
    std::optional<Bipartition> partition;
    OddCycle witness;

    explicit operator bool() const { return partition.has_value(); }
};

inline BipartitionResult bipartition(const Multigraph& g)
{
    if (!is_connected(g)) throw std::invalid_argument("bipartition requires a connected graph");
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<int> colour(n + 1, -1), parent(n + 1, 0);
    std::deque<int> queue;
    BipartitionResult result;
    if (n == 0) {
        result.partition = Bipartition{{Side::A}};
        return result;
    }
    colour[1] = 0;
    queue.push_back(1);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& end : g.ends(v)) {
            int w = end.neighbour;
            auto wi = static_cast<std::size_t>(w);
            if (colour[wi] < 0) {
                colour[wi] = 1 - colour[static_cast<std::size_t>(v)];
                parent[wi] = v;
                queue.push_back(w);
            } else if (colour[wi] == colour[static_cast<std::size_t>(v)]) {
                // Walk v -> root, then root -> w, closed by the edge w-v.
                std::vector<int> up{v}, down{w};
                while (up.back() != 1) up.push_back(parent[static_cast<std::size_t>(up.back())]);
                while (down.back() != 1) down.push_back(parent[static_cast<std::size_t>(down.back())]);
                while (up.size() > 1 && down.size() > 1 && up[up.size() - 2] == down[down.size() - 2]) {
                    up.pop_back();
                    down.pop_back();
                }
                result.witness.walk = up;
                for (auto it = down.rbegin() + 1; it != down.rend(); ++it) result.witness.walk.push_back(*it);
                return result;
            }
        }
    }
    Bipartition b;
    b.side.resize(n + 1, Side::A);
    for (std::size_t v = 1; v <= n; ++v) b.side[v] = colour[v] == 0 ? Side::A : Side::B;
    result.partition = std::move(b);
    return result;
}

inline bool is_bipartite(const Multigraph& g) { return static_cast<bool>(bipartition(g)); }

/// Shortest cycle length; a parallel pair counts as a 2-cycle. nullopt for forests.
inline std::optional<int> girth(const Multigraph& g)
{
    if (!g.is_simple()) return 2;
    const auto n = static_cast<std::size_t>(g.order());
    int best = 0;
    std::vector<int> dist(n + 1), from(n + 1);
    for (int s = 1; s <= g.order(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        from[static_cast<std::size_t>(s)] = -1;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (const auto& end : g.ends(v)) {
                if (end.edge == from[static_cast<std::size_t>(v)]) continue;
                auto w = static_cast<std::size_t>(end.neighbour);
                if (dist[w] < 0) {
                    dist[w] = dist[static_cast<std::size_t>(v)] + 1;
                    from[w] = end.edge;
                    queue.push_back(end.neighbour);
                } else {
                    int len = dist[w] + dist[static_cast<std::size_t>(v)] + 1;
                    if (best == 0 || len < best) best = len;
                }
            }
        }
    }
    if (best == 0) return std::nullopt;
    return best;
}

}  // namespace periodic
