#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "multigraph.hpp"
#include "parallel.hpp"

namespace periodic {

/// Parameters of one generation request.
struct GenSpec {
    enum class Degrees { cubic, two_and_three };
    int n = 16;
    Degrees degrees = Degrees::cubic;
    int m = 24;
    bool bipartite = false;
    bool connected = true;
    int min_girth = 3;

    void validate() const
    {
        if (n < 1) throw std::invalid_argument("vertex count must be positive");
        if (degrees == Degrees::cubic && (n % 2 != 0 || m * 2 != 3 * n))
            throw std::invalid_argument("cubic graphs need even n and m = 3n/2");
        if (degrees == Degrees::two_and_three && (m < n || m * 2 > 3 * n))
            throw std::invalid_argument("degree sums infeasible: need n <= m <= 3n/2");
    }
};

/// A graph together with its canonical form; generators emit these sorted by form.
struct Generated {
    CanonicalForm form;
    Multigraph graph;
};

namespace detail {

/// Connected cubic pseudograph (loops and parallel edges allowed), 0-based.
struct Pseudograph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u <= v; u == v is a loop

    DenseGraph dense() const
    {
        DenseGraph d(n);
        for (auto [u, v] : edges) d.add(u, v);
        return d;
    }

    /// 2 per loop plus 1 per surplus parallel copy: how far the graph is from simple.
    int defect() const
    {
        int w = 0;
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i].first == sorted[i].second) w += 2;
            else if (i > 0 && sorted[i] == sorted[i - 1]) w += 1;
        }
        return w;
    }
};

inline Pseudograph relabel(const Pseudograph& p, const std::vector<int>& order)
{
    std::vector<int> inv(static_cast<std::size_t>(p.n));
    for (int i = 0; i < p.n; ++i) inv[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    Pseudograph out{p.n, {}};
    out.edges.reserve(p.edges.size());
    for (auto [u, v] : p.edges) {
        int a = inv[static_cast<std::size_t>(u)], b = inv[static_cast<std::size_t>(v)];
        out.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

/// Trees with maximum degree 3 on k vertices, as edge lists; k >= 1.
inline std::vector<Pseudograph> subcubic_trees(int k)
{
    std::vector<Pseudograph> level{{1, {}}};
    for (int size = 2; size <= k; ++size) {
        std::map<CanonicalForm, Pseudograph> next;
        for (const auto& t : level) {
            std::vector<int> deg(static_cast<std::size_t>(t.n), 0);
            for (auto [u, v] : t.edges) ++deg[static_cast<std::size_t>(u)], ++deg[static_cast<std::size_t>(v)];
            for (int v = 0; v < t.n; ++v) {
                if (deg[static_cast<std::size_t>(v)] >= 3) continue;
                Pseudograph c{t.n + 1, t.edges};
                c.edges.emplace_back(v, t.n);
                auto lab = canonical_labelling(c.dense());
                next.emplace(lab.form, relabel(c, lab.order));
            }
        }
        level.clear();
        for (auto& [f, t] : next) level.push_back(std::move(t));
    }
    return level;
}

/// Cubic pseudographs that are trees with a loop at every leaf. They have no
/// edge that can be removed by the expansion inverse, so they seed each level.
inline std::vector<Pseudograph> looped_trees(int order)
{
    std::vector<Pseudograph> out;
    if (order == 2) {
        out.push_back({2, {{0, 0}, {0, 1}, {1, 1}}});
        return out;
    }
    int internal = order / 2 - 1;
    for (const auto& t : subcubic_trees(internal)) {
        Pseudograph p{order, t.edges};
        std::vector<int> deg(static_cast<std::size_t>(internal), 0);
        for (auto [u, v] : t.edges) ++deg[static_cast<std::size_t>(u)], ++deg[static_cast<std::size_t>(v)];
        int next = internal;
        for (int v = 0; v < internal; ++v)
            for (int k = deg[static_cast<std::size_t>(v)]; k < 3; ++k) {
                p.edges.emplace_back(v, next);
                p.edges.emplace_back(next, next);
                ++next;
            }
        out.push_back(std::move(p));
    }
    return out;
}

/// Calls visit(child) for every expansion of p: subdivide two edge slots
/// (possibly the same edge twice) and join the two new vertices.
template <typename Visit>
void for_each_expansion(const Pseudograph& p, Visit&& visit)
{
    const int x = p.n, y = p.n + 1;
    const std::size_t m = p.edges.size();
    Pseudograph child{p.n + 2, {}};
    child.edges.reserve(m + 3);
    for (std::size_t a = 0; a < m; ++a) {
        // Parallel copies are interchangeable: only the first copy of a class
        // is used as slot a, and slot b ranges over distinct classes or the
        // next copy of the same class.
        if (a > 0 && p.edges[a] == p.edges[a - 1]) continue;
        for (std::size_t b = a; b < m; ++b) {
            if (b > a && p.edges[b] == p.edges[b - 1] && !(b == a + 1 && p.edges[b] == p.edges[a])) continue;
            child.edges.clear();
            for (std::size_t e = 0; e < m; ++e)
                if (e != a && e != b) child.edges.push_back(p.edges[e]);
            auto [au, av] = p.edges[a];
            if (a == b) {
                child.edges.emplace_back(au, x);
                child.edges.emplace_back(x, y);
                child.edges.emplace_back(std::min(av, y), std::max(av, y));
            } else {
                auto [bu, bv] = p.edges[b];
                child.edges.emplace_back(au, x);
                child.edges.emplace_back(av, x);
                child.edges.emplace_back(bu, y);
                child.edges.emplace_back(bv, y);
            }
            child.edges.emplace_back(x, y);
            for (auto& e : child.edges)
                if (e.first > e.second) std::swap(e.first, e.second);
            visit(child);
        }
    }
}

using ChildFilter = std::function<bool(const Pseudograph&)>;

/// Expands every parent, keeps children accepted by the filter, and returns one
/// representative per isomorphism class in canonical labelling, sorted by form.
inline std::vector<std::pair<CanonicalForm, Pseudograph>> expand_level(const std::vector<Pseudograph>& parents,
                                                                       const ChildFilter& keep, unsigned jobs)
{
    const std::size_t chunks = std::min<std::size_t>(parents.size(), 64 * static_cast<std::size_t>(resolve_jobs(jobs)));
    auto partial = parallel_map(chunks, jobs, [&](std::size_t c) {
        std::map<CanonicalForm, Pseudograph> found;
        for (std::size_t i = c; i < parents.size(); i += chunks)
            for_each_expansion(parents[i], [&](const Pseudograph& child) {
                if (keep && !keep(child)) return;
                auto lab = canonical_labelling(child.dense());
                if (!found.count(lab.form)) found.emplace(lab.form, relabel(child, lab.order));
            });
        return found;
    });
    std::map<CanonicalForm, Pseudograph> merged;
    for (auto& part : partial) merged.merge(part);
    std::vector<std::pair<CanonicalForm, Pseudograph>> out(std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end()));
    return out;
}

/// All connected cubic pseudographs on `order` vertices whose defect is at most
/// max_defect. A reduction step raises the defect by at most 2, so level
/// order-2 is built with budget max_defect + 2.
inline const std::vector<Pseudograph>& cubic_pseudographs(int order, int max_defect, unsigned jobs)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<Pseudograph>> memo;
    if (order < 2 || order % 2) throw std::invalid_argument("cubic pseudographs need a positive even order");
    max_defect = std::min(max_defect, order + 2);
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find({order, max_defect}); it != memo.end()) return it->second;
    }
    std::vector<std::pair<CanonicalForm, Pseudograph>> level;
    if (order == 2) {
        for (auto& p : std::vector<Pseudograph>{{2, {{0, 1}, {0, 1}, {0, 1}}}, looped_trees(2).front()}) {
            auto lab = canonical_labelling(p.dense());
            level.emplace_back(lab.form, relabel(p, lab.order));
        }
    } else {
        const auto& parents = cubic_pseudographs(order - 2, max_defect + 2, jobs);
        level = expand_level(parents, [max_defect](const Pseudograph& c) { return c.defect() <= max_defect; }, jobs);
        for (auto& t : looped_trees(order)) {
            auto lab = canonical_labelling(t.dense());
            level.emplace_back(lab.form, relabel(t, lab.order));
        }
    }
    std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    level.erase(std::unique(level.begin(), level.end(), [](const auto& a, const auto& b) { return a.first == b.first; }), level.end());
    std::vector<Pseudograph> out;
    out.reserve(level.size());
    for (auto& [form, p] : level)
        if (p.defect() <= max_defect) out.push_back(std::move(p));
    std::lock_guard lock(mutex);
    return memo.emplace(std::make_pair(order, max_defect), std::move(out)).first->second;
}

inline bool pseudo_is_bipartite(const Pseudograph& p)
{
    std::vector<int> colour(static_cast<std::size_t>(p.n), -1);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(p.n));
    for (auto [u, v] : p.edges) {
        if (u == v) return false;
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<int> stack;
    for (int s = 0; s < p.n; ++s) {
        if (colour[static_cast<std::size_t>(s)] >= 0) continue;
        colour[static_cast<std::size_t>(s)] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (colour[static_cast<std::size_t>(w)] < 0) {
                    colour[static_cast<std::size_t>(w)] = 1 - colour[static_cast<std::size_t>(v)];
                    stack.push_back(w);
                } else if (colour[static_cast<std::size_t>(w)] == colour[static_cast<std::size_t>(v)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline Multigraph to_multigraph(const Pseudograph& p)
{
    Multigraph g(p.n);
    for (auto [u, v] : p.edges) g.add_edge(u + 1, v + 1);
    return g;
}

inline std::vector<Generated> to_generated(std::vector<std::pair<CanonicalForm, Pseudograph>> level)
{
    std::vector<Generated> out;
    out.reserve(level.size());
    for (auto& [form, p] : level) out.push_back({std::move(form), to_multigraph(p)});
    return out;
}

/// Loopless cubic multigraphs on `order` vertices with defect <= max_defect that pass keep.
inline std::vector<Generated> cubic_multigraphs(int order, int max_defect, const ChildFilter& keep, unsigned jobs)
{
    auto accept = [&](const Pseudograph& c) {
        for (auto [u, v] : c.edges)
            if (u == v) return false;
        return c.defect() <= max_defect && (!keep || keep(c));
    };
    if (order == 2) {
        std::vector<std::pair<CanonicalForm, Pseudograph>> level;
        Pseudograph theta{2, {{0, 1}, {0, 1}, {0, 1}}};
        if (accept(theta)) level.emplace_back(canonical_form(theta.dense()), theta);
        return to_generated(std::move(level));
    }
    return to_generated(expand_level(cubic_pseudographs(order - 2, max_defect + 2, jobs), accept, jobs));
}

}  // namespace detail

/// Connected simple cubic graphs on n vertices, one per isomorphism class,
/// sorted by canonical form and labelled canonically.
inline std::vector<Generated> gen_cubic_simple(int n, unsigned jobs = 1)
{
    if (n % 2 != 0) throw std::invalid_argument("cubic graphs need an even vertex count");
    if (n < 4) throw std::invalid_argument("no simple cubic graph has fewer than 4 vertices");
    return detail::cubic_multigraphs(n, 0, nullptr, jobs);
}

inline std::vector<Generated> filter_bipartite(const std::vector<Generated>& in)
{
    std::vector<Generated> out;
    for (const auto& g : in)
        if (is_connected(g.graph) && is_bipartite(g.graph)) out.push_back(g);
    return out;
}

/// Connected bipartite cubic multigraphs with exactly `doubles` parallel pairs
/// and no triple edges, built directly from the pseudograph census. Includes
/// graphs with adjacent double edges; see has_adjacent_doubles.
inline std::vector<Generated> gen_cubic_bipartite_with_doubles(int n, int doubles, unsigned jobs = 1)
{
    if (n % 2 != 0 || n < 2) throw std::invalid_argument("cubic graphs need an even vertex count");
    return detail::cubic_multigraphs(
        n, doubles, [doubles](const detail::Pseudograph& c) { return c.defect() == doubles && detail::pseudo_is_bipartite(c); }, jobs);
}

namespace detail {

/// Odd/even parity assignment to skeleton edges such that subdividing each
/// edge by k_e vertices (k_e of the given parity) yields a bipartite graph:
/// an edge with even k joins opposite sides, an edge with odd k joins equal sides.
template <typename Visit>
void for_each_bipartite_parity(const Pseudograph& skel, int budget, Visit&& visit)
{
    const std::size_t m = skel.edges.size();
    std::vector<int> parent(static_cast<std::size_t>(skel.n)), rel(static_cast<std::size_t>(skel.n));
    std::vector<char> odd(m, 0);

    // Recursive DFS with a parity union-find rebuilt per decision; sizes are tiny.
    auto consistent = [&](std::size_t upto) {
        for (int v = 0; v < skel.n; ++v) parent[static_cast<std::size_t>(v)] = v, rel[static_cast<std::size_t>(v)] = 0;
        std::function<std::pair<int, int>(int)> find = [&](int v) -> std::pair<int, int> {
            if (parent[static_cast<std::size_t>(v)] == v) return {v, 0};
            auto [r, p] = find(parent[static_cast<std::size_t>(v)]);
            parent[static_cast<std::size_t>(v)] = r;
            rel[static_cast<std::size_t>(v)] ^= p;
            return {r, rel[static_cast<std::size_t>(v)]};
        };
        for (std::size_t e = 0; e < upto; ++e) {
            auto [u, v] = skel.edges[e];
            int want = odd[e] ? 0 : 1;  // side difference required
            auto [ru, pu] = find(u);
            auto [rv, pv] = find(v);
            if (ru == rv) {
                if ((pu ^ pv) != want) return false;
            } else {
                parent[static_cast<std::size_t>(ru)] = rv;
                rel[static_cast<std::size_t>(ru)] = pu ^ pv ^ want;
            }
        }
        return true;
    };

    std::function<void(std::size_t, int)> rec = [&](std::size_t e, int used) {
        if (e == m) {
            visit(odd, used);
            return;
        }
        bool loop = skel.edges[e].first == skel.edges[e].second;
        for (int choice = 0; choice < 2; ++choice) {
            int cost = choice ? (loop ? 3 : 1) : 0;
            if (loop && !choice) continue;
            if (used + cost > budget) continue;
            odd[e] = static_cast<char>(choice);
            if (consistent(e + 1)) rec(e + 1, used + cost);
        }
        odd[e] = 0;
    };
    rec(0, 0);
}

}  // namespace detail

/// Connected, bipartite, simple graphs on n vertices and m edges whose degrees
/// are all 2 or 3. Every such graph is a cubic pseudograph (its skeleton, on
/// the degree-3 vertices) with edges subdivided by the degree-2 vertices.
inline std::vector<Generated> gen_deg23_bipartite(int n, int m, unsigned jobs = 1)
{
    GenSpec{n, GenSpec::Degrees::two_and_three, m, true, true, 4}.validate();
    const int cubic = 2 * m - 2 * n;
    const int twos = n - cubic;
    if (cubic % 2 != 0) throw std::invalid_argument("infeasible degree sums");
    std::vector<Generated> out;
    if (cubic == 0) {
        if (n % 2 == 0 && n >= 4) {
            Multigraph c(n);
            for (int v = 1; v <= n; ++v) c.add_edge(v, v % n + 1);
            out.push_back({canonical_form(c), canonical_relabel(c)});
        }
        return out;
    }
    if (cubic < 2) return out;

    const auto& skeletons = detail::cubic_pseudographs(cubic, twos, jobs);
    auto partial = parallel_map(skeletons.size(), jobs, [&](std::size_t i) {
        const auto& skel = skeletons[i];
        std::map<CanonicalForm, detail::Pseudograph> found;
        const std::size_t edges = skel.edges.size();
        std::vector<int> k(edges);
        detail::for_each_bipartite_parity(skel, twos, [&](const std::vector<char>& odd, int used) {
            int spare = twos - used;
            if (spare % 2) return;
            for (std::size_t e = 0; e < edges; ++e)
                k[e] = odd[e] ? (skel.edges[e].first == skel.edges[e].second ? 3 : 1) : 0;
            // Spread spare/2 pairs of extra vertices over the edges, non-decreasing edge index.
            std::function<void(std::size_t, int)> spread = [&](std::size_t from, int pairs) {
                if (pairs == 0) {
                    // Simple: at most one unsubdivided copy in each parallel class.
                    for (std::size_t e = 1; e < edges; ++e)
                        if (skel.edges[e] == skel.edges[e - 1] && k[e] == 0 && k[e - 1] == 0) return;
                    for (std::size_t e = 2; e < edges; ++e)
                        if (skel.edges[e] == skel.edges[e - 2] && k[e] == 0 && k[e - 2] == 0) return;
                    detail::Pseudograph g{n, {}};
                    int next = cubic;
                    for (std::size_t e = 0; e < edges; ++e) {
                        int prev = skel.edges[e].first;
                        for (int s = 0; s < k[e]; ++s) {
                            g.edges.emplace_back(std::min(prev, next), std::max(prev, next));
                            prev = next++;
                        }
                        g.edges.emplace_back(std::min(prev, skel.edges[e].second), std::max(prev, skel.edges[e].second));
                    }
                    auto lab = canonical_labelling(g.dense());
                    if (!found.count(lab.form)) found.emplace(lab.form, detail::relabel(g, lab.order));
                    return;
                }
                for (std::size_t e = from; e < edges; ++e) {
                    k[e] += 2;
                    spread(e, pairs - 1);
                    k[e] -= 2;
                }
            };
            spread(0, spare / 2);
        });
        return found;
    });
    std::map<CanonicalForm, detail::Pseudograph> merged;
    for (auto& part : partial) merged.merge(part);
    for (auto& [form, p] : merged) out.push_back({form, detail::to_multigraph(p)});
    return out;
}

/// Doubles the edges between degree-2 vertices. Accepted only when every
/// degree-2 vertex has exactly one degree-2 neighbour, so the degree-2
/// vertices split into adjacent pairs and no edge joins two of the resulting
/// double edges. Returns nullopt otherwise.
inline std::optional<Multigraph> lift_double_edges(const Multigraph& g)
{
    for (int v = 1; v <= g.order(); ++v)
        if (g.degree(v) != 2 && g.degree(v) != 3) return std::nullopt;
    Multigraph out = g;
    for (int v = 1; v <= g.order(); ++v) {
        if (g.degree(v) != 2) continue;
        int partners = 0, edge = -1;
        for (const auto& end : g.ends(v))
            if (g.degree(end.neighbour) == 2) ++partners, edge = end.edge;
        if (partners != 1) return std::nullopt;
        if (g.other_end(edge, v) > v) out.add_edge(v, g.other_end(edge, v));
    }
    return out;
}

/// True if some edge joins endpoints of two different parallel pairs.
inline bool has_adjacent_doubles(const Multigraph& g)
{
    std::vector<int> pair_of(static_cast<std::size_t>(g.order()) + 1, 0);
    auto pairs = g.parallel_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i)
        pair_of[static_cast<std::size_t>(pairs[i].first)] = pair_of[static_cast<std::size_t>(pairs[i].second)] = static_cast<int>(i) + 1;
    for (const auto& e : g.edges()) {
        int a = pair_of[static_cast<std::size_t>(e.u)], b = pair_of[static_cast<std::size_t>(e.v)];
        if (a && b && a != b) return true;
    }
    return false;
}

/// Per-d outcome of generating pre-lift graphs and lifting them.
struct LiftCounts {
    int doubles = 0;
    std::size_t pre_lift = 0;       // graphs from gen_deg23_bipartite
    std::size_t lifted_raw = 0;     // pre-lift graphs that admit a pairing
    std::vector<Generated> lifted;  // deduplicated lifted multigraphs, sorted by form
};

inline LiftCounts lift_stage(int n, int doubles, unsigned jobs = 1)
{
    LiftCounts out;
    out.doubles = doubles;
    if (doubles == 0) {
        out.lifted = filter_bipartite(gen_cubic_simple(n, jobs));
        out.pre_lift = out.lifted_raw = out.lifted.size();
        return out;
    }
    auto pre = gen_deg23_bipartite(n, 3 * n / 2 - doubles, jobs);
    out.pre_lift = pre.size();
    std::map<CanonicalForm, Multigraph> lifted;
    for (const auto& g : pre) {
        auto l = lift_double_edges(g.graph);
        if (!l) continue;
        ++out.lifted_raw;
        auto lab = canonical_labelling(DenseGraph::from(*l));
        if (!lifted.count(lab.form)) lifted.emplace(lab.form, canonical_relabel(*l));
    }
    for (auto& [form, g] : lifted) out.lifted.push_back({form, std::move(g)});
    return out;
}

}  // namespace periodic
