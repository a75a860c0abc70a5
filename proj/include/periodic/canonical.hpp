#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "multigraph.hpp"

namespace periodic {

/// Symmetric multiplicity matrix over vertices 0..n-1; the diagonal counts loops.
/// This is the working representation for canonical labelling and for the
/// generators, which pass through pseudographs on their way to the final graphs.
struct DenseGraph {
    int n = 0;
    std::vector<std::uint8_t> adj;

    DenseGraph() = default;
    explicit DenseGraph(int order) : n(order), adj(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), 0) {}

    std::uint8_t at(int u, int v) const { return adj[static_cast<std::size_t>(u * n + v)]; }

    void add(int u, int v, int count = 1)
    {
        adj[static_cast<std::size_t>(u * n + v)] = static_cast<std::uint8_t>(adj[static_cast<std::size_t>(u * n + v)] + count);
        if (u != v) adj[static_cast<std::size_t>(v * n + u)] = static_cast<std::uint8_t>(adj[static_cast<std::size_t>(v * n + u)] + count);
    }

    static DenseGraph from(const Multigraph& g)
    {
        DenseGraph d(g.order());
        for (const auto& e : g.edges()) d.add(e.u - 1, e.v - 1);
        return d;
    }

    /// Inverse of from(); loops are rejected by Multigraph.
    Multigraph to_multigraph() const
    {
        Multigraph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u; v < n; ++v)
                for (int k = 0; k < at(u, v); ++k) g.add_edge(u + 1, v + 1);
        return g;
    }
};

/// Isomorphism-invariant byte encoding. Two graphs have equal forms iff they are isomorphic.
struct CanonicalForm {
    std::string bytes;

    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;

    std::string hex() const
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(bytes.size() * 2);
        for (unsigned char c : bytes) {
            out.push_back(digits[c >> 4]);
            out.push_back(digits[c & 15]);
        }
        return out;
    }
};

struct CanonicalLabelling {
    std::vector<int> order;  // order[i] = vertex receiving canonical label i
    CanonicalForm form;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Individualisation-refinement canonical labelling for small dense graphs.
class Canonizer {
public:
    CanonicalLabelling run(const DenseGraph& g)
    {
        g_ = &g;
        n_ = g.n;
        nbrs_.assign(static_cast<std::size_t>(n_), {});
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v)
                if (g.at(u, v)) nbrs_[static_cast<std::size_t>(u)].push_back({v, g.at(u, v)});
        best_found_ = false;
        automorphisms_.clear();
        path_.clear();
        path_inv_.clear();

        State root;
        root.lab.resize(static_cast<std::size_t>(n_));
        std::iota(root.lab.begin(), root.lab.end(), 0);
        root.cell.assign(static_cast<std::size_t>(n_), 0);
        // Seed the partition with vertex degree and loop count.
        std::vector<std::uint64_t> seed(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            std::uint64_t d = 0;
            for (auto [w, m] : nbrs_[static_cast<std::size_t>(v)]) d += w == v ? 2u * m : m;
            seed[static_cast<std::size_t>(v)] = d * 16 + g.at(v, v);
        }
        split_all(root, seed);
        search(root);

        CanonicalLabelling out;
        out.order.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) out.order[static_cast<std::size_t>(i)] = best_lab_[static_cast<std::size_t>(i)];
        out.form.bytes.reserve(best_code_.size() + 2);
        out.form.bytes.push_back(static_cast<char>(n_ >> 8));
        out.form.bytes.push_back(static_cast<char>(n_ & 0xff));
        out.form.bytes.append(best_code_.begin(), best_code_.end());
        return out;
    }

private:
    struct Nbr {
        int v;
        std::uint8_t mult;
    };

    struct State {
        std::vector<int> lab;   // position -> vertex
        std::vector<int> cell;  // vertex -> start position of its cell
    };

    /// Splits every cell by key (ascending). Returns true if any cell split.
    bool split_all(State& s, const std::vector<std::uint64_t>& key)
    {
        bool changed = false;
        int start = 0;
        while (start < n_) {
            int end = start + 1;
            while (end < n_ && s.cell[static_cast<std::size_t>(s.lab[static_cast<std::size_t>(end)])] == start) ++end;
            if (end - start > 1) {
                auto first = s.lab.begin() + start, last = s.lab.begin() + end;
                std::sort(first, last, [&](int a, int b) {
                    auto ka = key[static_cast<std::size_t>(a)], kb = key[static_cast<std::size_t>(b)];
                    return ka != kb ? ka < kb : a < b;
                });
                int cur = start;
                for (int p = start; p < end; ++p) {
                    if (p > start && key[static_cast<std::size_t>(s.lab[static_cast<std::size_t>(p)])] !=
                                         key[static_cast<std::size_t>(s.lab[static_cast<std::size_t>(p - 1)])]) {
                        cur = p;
                        changed = true;
                    }
                    s.cell[static_cast<std::size_t>(s.lab[static_cast<std::size_t>(p)])] = cur;
                }
            }
            start = end;
        }
        return changed;
    }

    /// Equitable refinement; returns an invariant of the resulting partition.
    std::uint64_t refine(State& s)
    {
        std::vector<std::uint64_t> key(static_cast<std::size_t>(n_));
        std::uint64_t inv = 0;
        for (int round = 0;; ++round) {
            for (int v = 0; v < n_; ++v) {
                std::uint64_t h = 0;
                for (auto [w, m] : nbrs_[static_cast<std::size_t>(v)])
                    h += mix64(static_cast<std::uint64_t>(s.cell[static_cast<std::size_t>(w)]) * 8 + m);
                key[static_cast<std::size_t>(v)] = h;
            }
            bool changed = split_all(s, key);
            for (int p = 0; p < n_; ++p)
                if (s.cell[static_cast<std::size_t>(s.lab[static_cast<std::size_t>(p)])] == p)
                    inv = mix64(inv ^ (key[static_cast<std::size_t>(s.lab[static_cast<std::size_t>(p)])] + static_cast<std::uint64_t>(p)));
            if (!changed) break;
        }
        return inv;
    }

    void encode(const State& s, std::vector<std::uint8_t>& code) const
    {
        code.clear();
        code.reserve(static_cast<std::size_t>(n_ * (n_ + 1) / 2));
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                code.push_back(g_->at(s.lab[static_cast<std::size_t>(i)], s.lab[static_cast<std::size_t>(j)]));
    }

    bool same_orbit(int a, int b, std::size_t fixed_depth) const
    {
        // Union-find over automorphisms that fix the current path pointwise.
        std::vector<int> parent(static_cast<std::size_t>(n_));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        for (const auto& gamma : automorphisms_) {
            bool fixes = true;
            for (std::size_t d = 0; d < fixed_depth && fixes; ++d)
                fixes = gamma[static_cast<std::size_t>(path_[d])] == path_[d];
            if (!fixes) continue;
            for (int v = 0; v < n_; ++v) {
                int x = find(v), y = find(gamma[static_cast<std::size_t>(v)]);
                if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
            }
        }
        return find(a) == find(b);
    }

    void search(State s)
    {
        path_inv_.push_back(refine(s));
        // Prune when the path invariant is already worse than the best leaf's.
        if (best_found_) {
            std::size_t len = std::min(path_inv_.size(), best_inv_.size());
            auto cmp = std::lexicographical_compare_three_way(path_inv_.begin(), path_inv_.begin() + static_cast<std::ptrdiff_t>(len),
                                                              best_inv_.begin(), best_inv_.begin() + static_cast<std::ptrdiff_t>(len));
            if (cmp > 0 || (cmp == 0 && path_inv_.size() > best_inv_.size())) {
                path_inv_.pop_back();
                return;
            }
            if (cmp < 0) best_found_ = false;  // strictly better branch; first leaf below wins
        }

        int target = -1, target_end = -1;
        for (int p = 0; p < n_;) {
            int end = p + 1;
            while (end < n_ && s.cell[static_cast<std::size_t>(s.lab[static_cast<std::size_t>(end)])] == p) ++end;
            if (end - p > 1) {
                target = p;
                target_end = end;
                break;
            }
            p = end;
        }

        if (target < 0) {
            encode(s, code_);
            if (!best_found_ || path_inv_.size() < best_inv_.size() ||
                (path_inv_ == best_inv_ && code_ < best_code_) || path_inv_ < best_inv_) {
                best_found_ = true;
                best_code_ = code_;
                best_lab_ = s.lab;
                best_inv_ = path_inv_;
            } else if (path_inv_ == best_inv_ && code_ == best_code_ && automorphisms_.size() < 64) {
                std::vector<int> gamma(static_cast<std::size_t>(n_));
                for (int i = 0; i < n_; ++i)
                    gamma[static_cast<std::size_t>(best_lab_[static_cast<std::size_t>(i)])] = s.lab[static_cast<std::size_t>(i)];
                automorphisms_.push_back(std::move(gamma));
            }
            path_inv_.pop_back();
            return;
        }

        std::vector<int> candidates(s.lab.begin() + target, s.lab.begin() + target_end);
        std::sort(candidates.begin(), candidates.end());
        std::vector<int> explored;
        for (int v : candidates) {
            bool skip = false;
            for (int u : explored)
                if (same_orbit(u, v, path_.size())) {
                    skip = true;
                    break;
                }
            if (skip) continue;
            explored.push_back(v);

            State child = s;
            auto pos = std::find(child.lab.begin() + target, child.lab.begin() + target_end, v);
            std::iter_swap(child.lab.begin() + target, pos);
            for (int p = target + 1; p < target_end; ++p) child.cell[static_cast<std::size_t>(child.lab[static_cast<std::size_t>(p)])] = target + 1;
            child.cell[static_cast<std::size_t>(v)] = target;
            path_.push_back(v);
            search(std::move(child));
            path_.pop_back();
        }
        path_inv_.pop_back();
    }

    const DenseGraph* g_ = nullptr;
    int n_ = 0;
    std::vector<std::vector<Nbr>> nbrs_;
    std::vector<int> path_;
    std::vector<std::uint64_t> path_inv_;
    bool best_found_ = false;
    std::vector<std::uint64_t> best_inv_;
    std::vector<std::uint8_t> best_code_, code_;
    std::vector<int> best_lab_;
    std::vector<std::vector<int>> automorphisms_;
};

}  // namespace detail

inline CanonicalLabelling canonical_labelling(const DenseGraph& g)
{
    thread_local detail::Canonizer canon;
    return canon.run(g);
}

inline CanonicalForm canonical_form(const DenseGraph& g) { return canonical_labelling(g).form; }

inline CanonicalForm canonical_form(const Multigraph& g) { return canonical_form(DenseGraph::from(g)); }

/// Relabels g into its canonical vertex order (vertex of canonical label i becomes i+1).
inline Multigraph canonical_relabel(const Multigraph& g)
{
    auto lab = canonical_labelling(DenseGraph::from(g));
    std::vector<int> perm(static_cast<std::size_t>(g.order()) + 1);
    for (int i = 0; i < g.order(); ++i) perm[static_cast<std::size_t>(lab.order[static_cast<std::size_t>(i)] + 1)] = i + 1;
    return g.relabelled(perm);
}

inline bool is_isomorphic(const Multigraph& a, const Multigraph& b)
{
    return a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

}  // namespace periodic
