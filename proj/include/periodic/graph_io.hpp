#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multigraph.hpp"

namespace periodic {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset)
    {
    }

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GraphFormat { graph6, multigraph_text };

// graph6 ---------------------------------------------------------------------

inline std::string write_graph6(const Multigraph& g)
{
    if (!g.is_simple()) throw FormatError("graph6 cannot encode parallel edges");
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    } else {
        throw FormatError("graph too large for graph6");
    }
    int acc = 0, bits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.multiplicity(i + 1, j + 1) ? 1 : 0);
            if (++bits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = bits = 0;
            }
        }
    if (bits) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
    return out;
}

/// Decodes one graph6 record. base_offset is added to reported error offsets.
inline Multigraph read_graph6(std::string_view data, std::size_t base_offset = 0)
{
    constexpr std::string_view header = ">>graph6<<";
    if (data.substr(0, header.size()) == header) {
        data.remove_prefix(header.size());
        base_offset += header.size();
    }
    while (!data.empty() && (data.back() == '\n' || data.back() == '\r')) data.remove_suffix(1);
    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= data.size()) throw ParseError("truncated graph6 record", base_offset + pos);
        int c = static_cast<unsigned char>(data[pos]);
        if (c < 63 || c > 126) throw ParseError("invalid graph6 byte", base_offset + pos);
        ++pos;
        return c - 63;
    };
    int n = next();
    if (n == 63) {
        if (pos < data.size() && data[pos] == 126) throw ParseError("graph6 orders beyond 258047 are not supported", base_offset + pos);
        n = (next() << 12) | (next() << 6) | next();
    }
    Multigraph g(n);
    int acc = 0, bits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (bits == 0) {
                acc = next();
                bits = 6;
            }
            --bits;
            if ((acc >> bits) & 1) g.add_edge(i + 1, j + 1);
        }
    if (pos != data.size()) throw ParseError("trailing bytes after graph6 record", base_offset + pos);
    return g;
}

// multigraph-text --------------------------------------------------------------
//
//   mg <n> <m>
//   e <u> <v>        (m lines, 1 <= u < v <= n, repeated lines are parallel edges)
//
// '#' starts a comment. A file may hold several graphs back to back.

inline std::string write_multigraph_text(const Multigraph& g)
{
    std::string out = "mg " + std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
    for (auto [u, v] : g.sorted_edge_list()) out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

namespace detail {

class LineTokenizer {
public:
    explicit LineTokenizer(std::string_view data) : data_(data) {}

    /// Advances to the next non-empty, non-comment line. Returns false at end.
    bool next_line()
    {
        while (pos_ < data_.size()) {
            std::size_t end = data_.find('\n', pos_);
            if (end == std::string_view::npos) end = data_.size();
            line_start_ = pos_;
            line_ = data_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_no_;
            if (auto hash = line_.find('#'); hash != std::string_view::npos) line_ = line_.substr(0, hash);
            tok_pos_ = 0;
            skip_space();
            if (tok_pos_ < line_.size()) return true;
        }
        return false;
    }

    bool at_line_end()
    {
        skip_space();
        return tok_pos_ >= line_.size();
    }

    std::string_view word()
    {
        skip_space();
        std::size_t start = tok_pos_;
        while (tok_pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[tok_pos_]))) ++tok_pos_;
        if (start == tok_pos_) fail("unexpected end of line");
        return line_.substr(start, tok_pos_ - start);
    }

    long long integer()
    {
        skip_space();
        std::size_t start = tok_pos_;
        auto w = word();
        long long value = 0;
        auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
        if (ec != std::errc() || ptr != w.data() + w.size()) fail_at("expected integer, got '" + std::string(w) + "'", start);
        return value;
    }

    /// Byte offset of the next token.
    std::size_t offset()
    {
        skip_space();
        return line_start_ + tok_pos_;
    }
    std::size_t line_number() const { return line_no_; }

    [[noreturn]] void fail(const std::string& what) const { fail_at(what, tok_pos_); }

    [[noreturn]] void fail_at(const std::string& what, std::size_t col) const
    {
        throw ParseError(what + " on line " + std::to_string(line_no_), line_start_ + col);
    }

    std::size_t line_start() const { return line_start_; }

private:
    void skip_space()
    {
        while (tok_pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[tok_pos_]))) ++tok_pos_;
    }

    std::string_view data_;
    std::size_t pos_ = 0, line_start_ = 0, tok_pos_ = 0, line_no_ = 0;
    std::string_view line_;
};

}  // namespace detail

inline std::vector<Multigraph> read_multigraph_text_all(std::string_view data)
{
    std::vector<Multigraph> out;
    detail::LineTokenizer tok(data);
    while (tok.next_line()) {
        if (tok.word() != "mg") tok.fail_at("expected 'mg' header", 0);
        long long n = tok.integer(), m = tok.integer();
        if (n < 1 || n > 100000) tok.fail("vertex count out of range");
        if (m < 0) tok.fail("negative edge count");
        if (!tok.at_line_end()) tok.fail("trailing tokens after header");
        Multigraph g(static_cast<int>(n));
        for (long long k = 0; k < m; ++k) {
            if (!tok.next_line()) throw ParseError("expected " + std::to_string(m) + " edge lines, found " + std::to_string(k), data.size());
            if (tok.word() != "e") tok.fail_at("expected 'e' line", 0);
            auto uo = tok.offset();
            long long u = tok.integer(), v = tok.integer();
            if (u < 1 || v < 1 || u > n || v > n) tok.fail_at("edge endpoint out of range", uo - tok.line_start());
            if (u == v) tok.fail_at("loop edge", uo - tok.line_start());
            if (!tok.at_line_end()) tok.fail("trailing tokens after edge");
            g.add_edge(static_cast<int>(u), static_cast<int>(v));
        }
        out.push_back(std::move(g));
    }
    return out;
}

inline Multigraph read_multigraph_text(std::string_view data)
{
    auto all = read_multigraph_text_all(data);
    if (all.size() != 1) throw ParseError("expected exactly one graph, found " + std::to_string(all.size()), 0);
    return std::move(all.front());
}

inline std::string write_graph(GraphFormat format, const Multigraph& g)
{
    return format == GraphFormat::graph6 ? write_graph6(g) + "\n" : write_multigraph_text(g);
}

inline std::vector<Multigraph> read_graph6_all(std::string_view data)
{
    std::vector<Multigraph> out;
    std::size_t pos = 0;
    while (pos < data.size()) {
        std::size_t end = data.find('\n', pos);
        if (end == std::string_view::npos) end = data.size();
        auto line = data.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) out.push_back(read_graph6(line, pos));
        pos = end + 1;
    }
    return out;
}

inline std::vector<Multigraph> read_graphs(GraphFormat format, std::string_view data)
{
    return format == GraphFormat::graph6 ? read_graph6_all(data) : read_multigraph_text_all(data);
}

/// Guesses the format from the first non-blank token. A graph6 line for 46
/// vertices also starts with 'm', so the whole "mg" token is checked.
inline GraphFormat sniff_format(std::string_view data)
{
    std::size_t i = 0;
    while (i < data.size() && std::isspace(static_cast<unsigned char>(data[i]))) ++i;
    if (i == data.size() || data[i] == '#') return GraphFormat::multigraph_text;
    bool mg = data.substr(i, 2) == "mg" && (i + 2 == data.size() || std::isspace(static_cast<unsigned char>(data[i + 2])));
    return mg ? GraphFormat::multigraph_text : GraphFormat::graph6;
}

}  // namespace periodic
