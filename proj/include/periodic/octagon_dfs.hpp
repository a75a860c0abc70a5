#pragma once

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <vector>

#include "multigraph.hpp"
#include "surface.hpp"

namespace periodic {

struct DfsOptions {
    int walk_length = 8;
    int walk_count = 6;
    /// Reject walks that pass through a vertex twice. Default: only for simple graphs.
    enum class Revisit { auto_detect, forbid, allow } revisit = Revisit::auto_detect;
    /// Whether a walk may leave a vertex along the edge it just arrived on:
    /// never, only on edges with a parallel copy, or always.
    enum class Reversal { never, parallel_only, always } reversal = Reversal::parallel_only;
};

struct DfsResult {
    std::size_t directed_sets = 0;  // sets of directed walks before the equality convention
    std::vector<OctagonSet> sets;   // distinct under OctagonSet::key, sorted by key
};

namespace detail {

class OctagonDfs {
public:
    OctagonDfs(const Multigraph& g, const DfsOptions& opt) : g_(g), opt_(opt)
    {
        forbid_revisit_ = opt.revisit == DfsOptions::Revisit::forbid ||
                          (opt.revisit == DfsOptions::Revisit::auto_detect && g.is_simple());
        darts_ = 2 * g.size();
        // Darts ordered by (tail, head, edge id).
        order_.resize(static_cast<std::size_t>(darts_));
        for (Dart d = 0; d < darts_; ++d) order_[static_cast<std::size_t>(d)] = d;
        std::sort(order_.begin(), order_.end(), [&](Dart a, Dart b) {
            auto ka = std::tuple(dart_tail(g, a), dart_head(g, a), dart_edge(a));
            auto kb = std::tuple(dart_tail(g, b), dart_head(g, b), dart_edge(b));
            return ka < kb;
        });
        used_.assign(static_cast<std::size_t>(darts_), 0);
        dist_.assign(static_cast<std::size_t>(g.order()) + 1, std::vector<int>(static_cast<std::size_t>(g.order()) + 1, INT_MAX / 2));
        for (int s = 1; s <= g.order(); ++s) {
            auto& d = dist_[static_cast<std::size_t>(s)];
            d[static_cast<std::size_t>(s)] = 0;
            std::deque<int> q{s};
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                for (const auto& e : g.ends(v))
                    if (d[static_cast<std::size_t>(e.neighbour)] > d[static_cast<std::size_t>(v)] + 1) {
                        d[static_cast<std::size_t>(e.neighbour)] = d[static_cast<std::size_t>(v)] + 1;
                        q.push_back(e.neighbour);
                    }
            }
        }
    }

    DfsResult run()
    {
        DfsResult out;
        if (darts_ != opt_.walk_length * opt_.walk_count) return out;
        next_walk();
        out.directed_sets = directed_;
        for (auto& [k, s] : found_) out.sets.push_back(std::move(s));
        return out;
    }

private:
    void next_walk()
    {
        Dart start = -1;
        for (Dart d : order_)
            if (!used_[static_cast<std::size_t>(d)]) {
                start = d;
                break;
            }
        if (start < 0) {
            ++directed_;
            OctagonSet s;
            s.provenance = Provenance::dfs;
            for (const auto& w : walks_) s.faces.push_back(Face{w});
            auto k = s.key();
            found_.emplace(std::move(k), std::move(s));
            return;
        }
        walks_.emplace_back();
        push(start);
        extend();
        pop();
        walks_.pop_back();
    }

    void push(Dart d)
    {
        used_[static_cast<std::size_t>(d)] = 1;
        walks_.back().push_back(d);
    }

    void pop()
    {
        Dart d = walks_.back().back();
        used_[static_cast<std::size_t>(d)] = 0;
        walks_.back().pop_back();
    }

    bool on_current_walk(int v) const
    {
        for (Dart d : walks_.back())
            if (dart_tail(g_, d) == v) return true;
        return false;
    }

    bool turn_allowed(Dart in, Dart out) const
    {
        if (dart_edge(in) != dart_edge(out)) return true;
        switch (opt_.reversal) {
        case DfsOptions::Reversal::never: return false;
        case DfsOptions::Reversal::parallel_only: {
            const auto& e = g_.edge(dart_edge(in));
            return g_.multiplicity(e.u, e.v) > 1;
        }
        case DfsOptions::Reversal::always: return true;
        }
        return false;
    }

    void extend()
    {
        auto& walk = walks_.back();
        const Dart first = walk.front(), last = walk.back();
        const int start_vertex = dart_tail(g_, first);
        const int len = static_cast<int>(walk.size());
        const int v = dart_head(g_, last);
        if (len == opt_.walk_length) {
            if (v == start_vertex && turn_allowed(last, first)) next_walk();
            return;
        }
        const int remaining = opt_.walk_length - len - 1;  // steps after the next one
        for (const auto& end : g_.ends(v)) {
            Dart d = dart_from(g_, end.edge, v);
            if (used_[static_cast<std::size_t>(d)] || !turn_allowed(last, d)) continue;
            int w = end.neighbour;
            if (dist_[static_cast<std::size_t>(w)][static_cast<std::size_t>(start_vertex)] > remaining) continue;
            if (forbid_revisit_ && !(remaining == 0 && w == start_vertex) && on_current_walk(w)) continue;
            push(d);
            extend();
            pop();
        }
    }

    const Multigraph& g_;
    DfsOptions opt_;
    bool forbid_revisit_ = true;
    int darts_ = 0;
    std::vector<Dart> order_;
    std::vector<char> used_;
    std::vector<std::vector<int>> dist_;
    std::vector<std::vector<Dart>> walks_;
    std::size_t directed_ = 0;
    std::map<std::vector<std::vector<int>>, OctagonSet> found_;
};

}  // namespace detail

/// All sets of closed walks of the given length covering every dart exactly
/// once, found by extending one walk at a time from the least unused dart.
inline DfsResult dfs_octagon_sets(const Multigraph& g, const DfsOptions& opt = {})
{
    return detail::OctagonDfs(g, opt).run();
}

/// Orientation assignment realising the walks as faces, if one exists: every
/// vertex must turn each incoming edge into the next edge of one cyclic order.
inline std::optional<OrientationMask> realising_orientation(const Multigraph& g, const std::vector<Face>& walks)
{
    if (!g.is_regular(3)) return std::nullopt;
    std::vector<int> turn(static_cast<std::size_t>(2 * g.size()), -1);  // incoming dart -> outgoing dart
    for (const auto& w : walks)
        for (std::size_t i = 0; i < w.darts.size(); ++i) {
            Dart in = w.darts[i], out = w.darts[(i + 1) % w.darts.size()];
            if (turn[static_cast<std::size_t>(in)] >= 0 && turn[static_cast<std::size_t>(in)] != out) return std::nullopt;
            turn[static_cast<std::size_t>(in)] = out;
        }
    OrientationMask mask = 0;
    for (int v = 1; v <= g.order(); ++v) {
        auto e = g.ends(v);
        bool fits[2] = {true, true};
        for (int i = 0; i < 3; ++i) {
            Dart in = dart_from(g, e[static_cast<std::size_t>(i)].edge, e[static_cast<std::size_t>(i)].neighbour);
            Dart t = turn[static_cast<std::size_t>(in)];
            if (t < 0) return std::nullopt;
            if (t != dart_from(g, e[static_cast<std::size_t>((i + 1) % 3)].edge, v)) fits[0] = false;
            if (t != dart_from(g, e[static_cast<std::size_t>((i + 2) % 3)].edge, v)) fits[1] = false;
        }
        if (fits[0]) continue;
        if (!fits[1]) return std::nullopt;
        mask |= OrientationMask{1} << (v - 1);
    }
    return mask;
}

}  // namespace periodic
