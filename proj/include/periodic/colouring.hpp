#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "multigraph.hpp"
#include "parallel.hpp"
#include "presentations.hpp"
#include "surface.hpp"

namespace periodic {

/// Which bipartition class reads its triangle word along the rotation.
/// Vertex 1 is always in class A.
enum class ReadingConvention { class_a_forward, class_b_forward };

struct ColouringProblem {
    Multigraph graph;
    OrientationMask orientation = 0;
    Presentation presentation;
    ReadingConvention convention = ReadingConvention::class_a_forward;
};

/// Per-vertex triangle uses (index 1..n) and the induced label of every edge.
/// A use's labels are assigned to the vertex's edge-ends in oriented cyclic order.
struct Colouring {
    std::vector<TriangleUse> uses;
    std::vector<int> edge_labels;  // by edge id

    std::vector<int> triangles() const
    {
        std::vector<int> out;
        for (std::size_t v = 1; v < uses.size(); ++v) out.push_back(uses[v].triangle);
        return out;
    }

    std::set<int> triangle_set() const
    {
        auto t = triangles();
        return {t.begin(), t.end()};
    }

    /// Identity of a colouring: which triangle sits where and the edge labels.
    /// Offsets are implied by these for every word with distinct rotations.
    std::pair<std::vector<int>, std::vector<int>> key() const { return {triangles(), edge_labels}; }
};

/// Index into the triangle word of the label a use puts on slot i.
inline int word_position(const TriangleUse& u, int slot)
{
    int k = u.reversed ? u.offset - slot : u.offset + slot;
    return ((k % 3) + 3) % 3;
}

/// Two neighbours may carry the same triangle only if their shared edge sits
/// at different positions of the word (two copies of a repeated letter).
/// Otherwise the two triangles would meet along the same corner on both sides
/// of the edge, i.e. the surface would fold back on itself.
inline bool same_corner(const TriangleUse& a, int slot_a, const TriangleUse& b, int slot_b)
{
    return a.triangle == b.triangle && word_position(a, slot_a) == word_position(b, slot_b);
}

/// Reading direction per vertex (true = reversed) under the problem's convention.
inline std::vector<char> reading_directions(const Multigraph& g, ReadingConvention c)
{
    auto b = bipartition(g);
    if (!b) throw std::invalid_argument("colouring requires a bipartite graph");
    std::vector<char> rev(static_cast<std::size_t>(g.order()) + 1, 0);
    for (int v = 1; v <= g.order(); ++v) {
        bool a = (*b.partition)[v] == Side::A;
        rev[static_cast<std::size_t>(v)] = (c == ReadingConvention::class_a_forward) ? !a : a;
    }
    return rev;
}

/// Breadth-first vertex order from vertex 1, neighbours taken in reference order.
inline std::vector<int> bfs_order(const Multigraph& g)
{
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(g.order()) + 1, 0);
    std::deque<int> q{1};
    seen[1] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        order.push_back(v);
        for (const auto& e : g.ends(v))
            if (!seen[static_cast<std::size_t>(e.neighbour)]) {
                seen[static_cast<std::size_t>(e.neighbour)] = 1;
                q.push_back(e.neighbour);
            }
    }
    return order;
}

struct SearchStats {
    std::size_t seeds = 0;
    std::size_t nodes = 0;
};

namespace detail {

inline void sort_unique(std::vector<Colouring>& cs)
{
    std::sort(cs.begin(), cs.end(), [](const Colouring& a, const Colouring& b) { return a.key() < b.key(); });
    cs.erase(std::unique(cs.begin(), cs.end(), [](const Colouring& a, const Colouring& b) { return a.key() == b.key(); }), cs.end());
}

/// Backtracking over vertices in BFS order. Each vertex has a fixed reading
/// direction (or both, when `any_direction`), and candidates come from the
/// corner index keyed by labels already fixed on its edge-ends.
class ColouringSearch {
public:
    struct Slot {
        std::array<int, 3> edge;  // edge ids in the cyclic order used for reading
    };

    ColouringSearch(const Multigraph& g, const Presentation& p, std::vector<Slot> slots, std::vector<char> reversed, bool any_direction,
                    std::vector<std::optional<int>> partial)
        : g_(g), p_(p), slots_(std::move(slots)), reversed_(std::move(reversed)), any_direction_(any_direction), partial_(std::move(partial))
    {
        const auto G = static_cast<std::size_t>(p.generators) + 1;
        pair_index_.assign(2, std::vector<std::vector<TriangleUse>>(G * G));
        single_index_.assign(2, std::vector<std::vector<TriangleUse>>(G));
        for (const auto& [ab, uses] : corners(p))
            for (const auto& u : uses) {
                pair_index_[u.reversed][static_cast<std::size_t>(ab.first) * G + static_cast<std::size_t>(ab.second)].push_back(u);
                single_index_[u.reversed][static_cast<std::size_t>(ab.first)].push_back(u);
            }
        order_ = bfs_order(g);
        labels_.assign(static_cast<std::size_t>(g.size()), 0);
        assigned_.assign(static_cast<std::size_t>(g.order()) + 1, std::nullopt);
        set_by_.assign(static_cast<std::size_t>(g.order()) + 1, {});
    }

    /// Candidate uses at v given the labels fixed so far, each re-based so
    /// that label i goes to slot edge i.
    std::vector<TriangleUse> candidates(int v) const
    {
        const auto& s = slots_[static_cast<std::size_t>(v)];
        std::array<int, 3> known{};
        for (int i = 0; i < 3; ++i) known[static_cast<std::size_t>(i)] = labels_[static_cast<std::size_t>(s.edge[static_cast<std::size_t>(i)])];
        std::vector<TriangleUse> out;
        for (int dir = 0; dir < 2; ++dir) {
            if (!any_direction_ && dir != reversed_[static_cast<std::size_t>(v)]) continue;
            int at = -1;
            for (int i = 0; i < 3 && at < 0; ++i)
                if (known[static_cast<std::size_t>(i)]) at = i;
            if (at < 0) {
                for (int t = 0; t < static_cast<int>(p_.triangles.size()); ++t)
                    for (int o = 0; o < 3; ++o) out.push_back({t, o, dir == 1});
                continue;
            }
            const auto G = static_cast<std::size_t>(p_.generators) + 1;
            int a = known[static_cast<std::size_t>(at)], b = known[static_cast<std::size_t>((at + 1) % 3)];
            const auto& src = b ? pair_index_[static_cast<std::size_t>(dir)][static_cast<std::size_t>(a) * G + static_cast<std::size_t>(b)]
                                : single_index_[static_cast<std::size_t>(dir)][static_cast<std::size_t>(a)];
            for (auto u : src) {
                // Reading starts at slot `at`; shift so it starts at slot 0.
                u.offset = ((u.reversed ? u.offset + at : u.offset - at) % 3 + 3) % 3;
                out.push_back(u);
            }
        }
        return out;
    }

    std::vector<Colouring> run_seed(const TriangleUse& seed, std::size_t limit, SearchStats& stats)
    {
        results_.clear();
        limit_ = limit;
        stats_ = &stats;
        if (try_assign(order_.front(), seed)) {
            descend(1);
            undo(order_.front());
        }
        return std::move(results_);
    }

    std::vector<TriangleUse> seeds() const { return candidates(order_.front()); }

private:
    bool try_assign(int v, const TriangleUse& u)
    {
        ++stats_->nodes;
        auto vi = static_cast<std::size_t>(v);
        if (partial_[vi] && *partial_[vi] != u.triangle) return false;
        const auto& s = slots_[vi];
        auto l = use_labels(p_, u);
        for (int i = 0; i < 3; ++i) {
            int cur = labels_[static_cast<std::size_t>(s.edge[static_cast<std::size_t>(i)])];
            if (cur && cur != l[static_cast<std::size_t>(i)]) return false;
        }
        for (int i = 0; i < 3; ++i) {
            int e = s.edge[static_cast<std::size_t>(i)];
            int w = g_.other_end(e, v);
            const auto& other = assigned_[static_cast<std::size_t>(w)];
            if (!other || other->triangle != u.triangle) continue;
            const auto& ws = slots_[static_cast<std::size_t>(w)].edge;
            int j = static_cast<int>(std::find(ws.begin(), ws.end(), e) - ws.begin());
            if (same_corner(u, i, *other, j)) return false;
        }
        auto& mine = set_by_[vi];
        mine.clear();
        for (int i = 0; i < 3; ++i) {
            auto e = static_cast<std::size_t>(s.edge[static_cast<std::size_t>(i)]);
            if (!labels_[e]) {
                labels_[e] = l[static_cast<std::size_t>(i)];
                mine.push_back(static_cast<int>(e));
            }
        }
        assigned_[vi] = u;
        return true;
    }

    void undo(int v)
    {
        auto vi = static_cast<std::size_t>(v);
        for (int e : set_by_[vi]) labels_[static_cast<std::size_t>(e)] = 0;
        set_by_[vi].clear();
        assigned_[vi].reset();
    }

    void descend(std::size_t k)
    {
        if (limit_ && results_.size() >= limit_) return;
        if (k == order_.size()) {
            Colouring c;
            c.uses.resize(assigned_.size());
            for (std::size_t v = 1; v < assigned_.size(); ++v) c.uses[v] = *assigned_[v];
            c.edge_labels = labels_;
            results_.push_back(std::move(c));
            return;
        }
        int v = order_[k];
        for (const auto& u : candidates(v)) {
            if (!try_assign(v, u)) continue;
            descend(k + 1);
            undo(v);
            if (limit_ && results_.size() >= limit_) return;
        }
    }

    const Multigraph& g_;
    const Presentation& p_;
    std::vector<Slot> slots_;
    std::vector<char> reversed_;
    bool any_direction_;
    std::vector<std::optional<int>> partial_;
    std::vector<std::vector<std::vector<TriangleUse>>> pair_index_, single_index_;
    std::vector<int> order_;
    std::vector<int> labels_;
    std::vector<std::optional<TriangleUse>> assigned_;
    std::vector<std::vector<int>> set_by_;
    std::vector<Colouring> results_;
    std::size_t limit_ = 0;
    SearchStats* stats_ = nullptr;
};

inline std::vector<ColouringSearch::Slot> oriented_slots(const RotationSystem& r)
{
    const auto& g = r.graph();
    std::vector<ColouringSearch::Slot> slots(static_cast<std::size_t>(g.order()) + 1);
    for (int v = 1; v <= g.order(); ++v) {
        auto c = r.cyclic_order(v);
        for (int i = 0; i < 3; ++i) slots[static_cast<std::size_t>(v)].edge[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)].edge;
    }
    return slots;
}

}  // namespace detail

struct SearchOptions {
    std::size_t limit = 0;  // 0 = all
    unsigned jobs = 1;
};

namespace detail {

template <typename MakeSearch>
std::vector<Colouring> seeded_search(MakeSearch make, const SearchOptions& opt, SearchStats* stats)
{
    auto seeds = make().seeds();
    std::vector<SearchStats> per(seeds.size());
    auto parts = parallel_map(seeds.size(), opt.jobs, [&](std::size_t i) {
        auto s = make();
        return s.run_seed(seeds[i], opt.limit, per[i]);
    });
    std::vector<Colouring> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    sort_unique(out);
    if (opt.limit && out.size() > opt.limit) out.resize(opt.limit);
    if (stats) {
        stats->seeds += seeds.size();
        for (const auto& s : per) stats->nodes += s.nodes;
    }
    return out;
}

}  // namespace detail

/// Completions of a partial triangle assignment (vertex -> triangle index,
/// nullopt = free) under the problem's orientation. An empty partial gives
/// every colouring.
inline std::vector<Colouring> complete_partial(const ColouringProblem& p, const std::vector<std::optional<int>>& partial,
                                               const SearchOptions& opt = {}, SearchStats* stats = nullptr)
{
    if (!p.graph.is_regular(3)) throw std::invalid_argument("colouring requires a 3-regular graph");
    if (partial.size() != static_cast<std::size_t>(p.graph.order()) + 1) throw std::invalid_argument("partial assignment must cover vertices 1..n");
    RotationSystem r(p.graph, p.orientation);
    auto slots = detail::oriented_slots(r);
    auto rev = reading_directions(p.graph, p.convention);
    auto make = [&] { return detail::ColouringSearch(p.graph, p.presentation, slots, rev, false, partial); };
    return detail::seeded_search(make, opt, stats);
}

/// All colourings (or the first `limit`) of the problem, sorted by key.
inline std::vector<Colouring> search_colourings(const ColouringProblem& p, const SearchOptions& opt = {}, SearchStats* stats = nullptr)
{
    return complete_partial(p, std::vector<std::optional<int>>(static_cast<std::size_t>(p.graph.order()) + 1), opt, stats);
}

/// Orientation-free labellings: every vertex may read its word in either
/// direction over the reference order. First phase of the two-phase engine.
inline std::vector<Colouring> orientation_free_labellings(const Multigraph& g, const Presentation& pres, unsigned jobs = 1)
{
    if (!g.is_regular(3)) throw std::invalid_argument("colouring requires a 3-regular graph");
    std::vector<detail::ColouringSearch::Slot> slots(static_cast<std::size_t>(g.order()) + 1);
    for (int v = 1; v <= g.order(); ++v) {
        auto e = g.ends(v);
        for (int i = 0; i < 3; ++i) slots[static_cast<std::size_t>(v)].edge[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)].edge;
    }
    std::vector<char> rev(static_cast<std::size_t>(g.order()) + 1, 0);
    std::vector<std::optional<int>> partial(static_cast<std::size_t>(g.order()) + 1);
    auto make = [&] { return detail::ColouringSearch(g, pres, slots, rev, true, partial); };
    SearchOptions opt;
    opt.jobs = jobs;
    return detail::seeded_search(make, opt, nullptr);
}

/// Second phase: re-reads an orientation-free labelling under the problem's
/// orientation. Returns the colouring if every vertex spells its word in the
/// required direction.
inline std::optional<Colouring> orient_labelling(const ColouringProblem& p, const Colouring& labelling)
{
    RotationSystem r(p.graph, p.orientation);
    auto rev = reading_directions(p.graph, p.convention);
    Colouring out;
    out.uses.resize(static_cast<std::size_t>(p.graph.order()) + 1);
    out.edge_labels = labelling.edge_labels;
    for (int v = 1; v <= p.graph.order(); ++v) {
        auto c = r.cyclic_order(v);
        std::array<int, 3> seen{};
        for (int i = 0; i < 3; ++i) seen[static_cast<std::size_t>(i)] = labelling.edge_labels[static_cast<std::size_t>(c[static_cast<std::size_t>(i)].edge)];
        const int t = labelling.uses[static_cast<std::size_t>(v)].triangle;
        bool found = false;
        for (int o = 0; o < 3 && !found; ++o) {
            TriangleUse u{t, o, rev[static_cast<std::size_t>(v)] != 0};
            if (use_labels(p.presentation, u) == seen) {
                out.uses[static_cast<std::size_t>(v)] = u;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    for (int v = 1; v <= p.graph.order(); ++v) {
        auto c = r.cyclic_order(v);
        for (int i = 0; i < 3; ++i) {
            int e = c[static_cast<std::size_t>(i)].edge, w = c[static_cast<std::size_t>(i)].neighbour;
            auto cw = r.cyclic_order(w);
            int j = 0;
            while (cw[static_cast<std::size_t>(j)].edge != e) ++j;
            if (same_corner(out.uses[static_cast<std::size_t>(v)], i, out.uses[static_cast<std::size_t>(w)], j)) return std::nullopt;
        }
    }
    return out;
}

/// Two-phase engine for one orientation: label first, then check orientation.
inline std::vector<Colouring> two_phase_colourings(const ColouringProblem& p, const std::vector<Colouring>& labellings)
{
    std::vector<Colouring> out;
    for (const auto& l : labellings)
        if (auto c = orient_labelling(p, l)) out.push_back(std::move(*c));
    detail::sort_unique(out);
    return out;
}

/// Names of the presentations that contain every triangle word used by c.
inline std::vector<std::string> transfer_report(const Colouring& c, const Presentation& source, const std::vector<Presentation>& others)
{
    std::vector<std::string> out;
    auto used = c.triangle_set();
    for (const auto& q : others)
        if (triangle_multiset_subset(used, source, q)) out.push_back(q.name);
    return out;
}

}  // namespace periodic
