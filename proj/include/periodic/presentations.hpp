#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graph_io.hpp"

namespace periodic {

/// Cyclic word x_i x_j x_k = 1, stored at its lexicographically least rotation.
using TriangleWord = std::array<int, 3>;

inline TriangleWord least_rotation(TriangleWord w)
{
    TriangleWord best = w;
    for (int r = 1; r < 3; ++r) {
        TriangleWord rot{w[static_cast<std::size_t>(r)], w[static_cast<std::size_t>((r + 1) % 3)], w[static_cast<std::size_t>((r + 2) % 3)]};
        best = std::min(best, rot);
    }
    return best;
}

inline bool has_repeated_label(const TriangleWord& w) { return w[0] == w[1] || w[1] == w[2] || w[0] == w[2]; }

class PresentationError : public std::runtime_error {
public:
    PresentationError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Presentation {
    std::string name;
    int generators = 15;
    std::vector<TriangleWord> triangles;  // in input order, each at its least rotation

    friend bool operator==(const Presentation&, const Presentation&) = default;

    /// How often each generator 1..G fills a triangle side.
    std::vector<int> slot_counts() const
    {
        std::vector<int> c(static_cast<std::size_t>(generators) + 1, 0);
        for (const auto& t : triangles)
            for (int x : t) ++c[static_cast<std::size_t>(x)];
        return c;
    }

    /// Human-readable notes for generators not used exactly three times.
    std::vector<std::string> multiplicity_warnings() const
    {
        std::vector<std::string> out;
        auto c = slot_counts();
        for (int x = 1; x <= generators; ++x)
            if (c[static_cast<std::size_t>(x)] != 3)
                out.push_back("generator x" + std::to_string(x) + " fills " + std::to_string(c[static_cast<std::size_t>(x)]) + " sides, expected 3");
        return out;
    }

    /// Index of the word in this presentation equal to w up to rotation, or -1.
    int find(const TriangleWord& w) const
    {
        auto key = least_rotation(w);
        for (std::size_t i = 0; i < triangles.size(); ++i)
            if (triangles[i] == key) return static_cast<int>(i);
        return -1;
    }
};

/// One way a triangle labels the three edge-ends of a dual vertex: the word
/// rotated to start at `offset`, read forwards or backwards.
struct TriangleUse {
    int triangle = 0;
    int offset = 0;
    bool reversed = false;

    friend auto operator<=>(const TriangleUse&, const TriangleUse&) = default;
};

inline std::array<int, 3> use_labels(const Presentation& p, const TriangleUse& u)
{
    const auto& w = p.triangles[static_cast<std::size_t>(u.triangle)];
    std::array<int, 3> out{};
    for (int i = 0; i < 3; ++i) {
        int k = u.reversed ? u.offset - i : u.offset + i;
        out[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(((k % 3) + 3) % 3)];
    }
    return out;
}

/// All 6T uses, ordered by (triangle, offset, reversed).
inline std::vector<TriangleUse> all_uses(const Presentation& p)
{
    std::vector<TriangleUse> out;
    for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t)
        for (int o = 0; o < 3; ++o)
            for (bool r : {false, true}) out.push_back({t, o, r});
    return out;
}

using CornerIndex = std::map<std::pair<int, int>, std::vector<TriangleUse>>;

/// Uses whose reading starts with label a immediately followed by label b.
inline CornerIndex corners(const Presentation& p)
{
    CornerIndex out;
    for (const auto& u : all_uses(p)) {
        auto l = use_labels(p, u);
        out[{l[0], l[1]}].push_back(u);
    }
    return out;
}

/// True iff every word of p selected by `chosen` appears in q up to rotation.
inline bool triangle_multiset_subset(const std::set<int>& chosen, const Presentation& p, const Presentation& q)
{
    for (int t : chosen) {
        if (t < 0 || t >= static_cast<int>(p.triangles.size())) throw std::out_of_range("triangle index out of range");
        if (q.find(p.triangles[static_cast<std::size_t>(t)]) < 0) return false;
    }
    return true;
}

// Text format:
//   presentation <name> generators=<G>
//   t <i> <j> <k>
// '#' starts a comment; commas and parentheses inside a t line are ignored.

inline std::string serialize_presentation(const Presentation& p)
{
    std::string out = "presentation " + p.name + " generators=" + std::to_string(p.generators) + "\n";
    for (const auto& t : p.triangles) out += "t " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
    return out;
}

inline Presentation parse_presentation(std::string_view data)
{
    std::string cleaned(data);
    for (char& c : cleaned)
        if (c == ',' || c == '(' || c == ')') c = ' ';
    detail::LineTokenizer tok(cleaned);
    Presentation p;
    bool header = false;
    try {
        while (tok.next_line()) {
            auto w = tok.word();
            if (!header) {
                if (w != "presentation") tok.fail_at("expected 'presentation' header", 0);
                p.name = std::string(tok.word());
                auto g = tok.word();
                constexpr std::string_view key = "generators=";
                if (g.substr(0, key.size()) != key) tok.fail("expected generators=<G>");
                auto num = g.substr(key.size());
                int value = 0;
                auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
                if (ec != std::errc() || ptr != num.data() + num.size() || value < 1) tok.fail("bad generator count");
                p.generators = value;
                if (!tok.at_line_end()) tok.fail("trailing tokens after header");
                header = true;
                continue;
            }
            if (w != "t") tok.fail_at("expected 't' line", 0);
            TriangleWord t{};
            for (auto& x : t) {
                long long v = tok.integer();
                if (v < 1 || v > p.generators)
                    throw PresentationError("generator index " + std::to_string(v) + " outside 1.." + std::to_string(p.generators), tok.line_number());
                x = static_cast<int>(v);
            }
            if (!tok.at_line_end()) tok.fail("trailing tokens after triangle");
            p.triangles.push_back(least_rotation(t));
        }
    } catch (const ParseError& e) {
        throw PresentationError(e.what(), tok.line_number());
    }
    if (!header) throw PresentationError("missing 'presentation' header", 0);
    if (p.triangles.empty()) throw PresentationError("presentation has no triangles", 0);
    return p;
}

namespace detail {

inline constexpr std::string_view builtin_t1 = R"(presentation T1 generators=15
t 1 1 10
t 1 15 2
t 2 11 9
t 2 14 3
t 3 7 4
t 3 15 13
t 4 8 6
t 4 12 11
t 5 5 8
t 5 10 12
t 6 6 14
t 7 7 12
t 8 13 9
t 9 14 15
t 10 13 11
)";

inline constexpr std::string_view builtin_t3 = R"(presentation T3 generators=15
t 1 1 10
t 1 15 2
t 2 11 3
t 2 14 5
t 3 7 4
t 3 15 8
t 4 8 9
t 4 12 12
t 5 9 6
t 5 13 13
t 6 8 11
t 6 10 13
t 7 9 14
t 7 10 12
t 11 15 14
)";

inline constexpr std::string_view builtin_t9 = R"(presentation T9 generators=15
t 1 1 10
t 1 15 2
t 2 11 4
t 2 14 6
t 3 5 9
t 3 8 7
t 3 10 13
t 4 8 5
t 4 14 14
t 5 10 12
t 6 7 12
t 6 15 9
t 7 8 11
t 9 15 13
t 11 12 13
)";

inline constexpr std::string_view builtin_t21 = R"(presentation T21 generators=15
t 1 5 2
t 4 13 11
t 1 6 4
t 5 9 10
t 1 3 13
t 5 13 9
t 2 7 10
t 6 9 8
t 2 12 15
t 6 11 10
t 3 11 14
t 7 8 15
t 3 14 8
t 7 14 12
t 4 12 15
)";

}  // namespace detail

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"T1", "T3", "T9", "T21"};
    return names;
}

inline Presentation builtin(std::string_view name)
{
    if (name == "T1") return parse_presentation(detail::builtin_t1);
    if (name == "T3") return parse_presentation(detail::builtin_t3);
    if (name == "T9") return parse_presentation(detail::builtin_t9);
    if (name == "T21") return parse_presentation(detail::builtin_t21);
    throw std::invalid_argument("unknown built-in presentation '" + std::string(name) + "'");
}

}  // namespace periodic
