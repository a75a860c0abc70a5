#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "canonical.hpp"
#include "colouring.hpp"
#include "graph_io.hpp"
#include "presentations.hpp"

namespace periodic {

// Certificate text format, one record per line:
//
//   certificate 1
//   presentation <name> generators=<G>
//   t <i> <j> <k>                     (the presentation's words, in order)
//   graph <n> <m>
//   e <u> <v>                         (m lines, in edge-id order)
//   form <hex canonical form>
//   orientation <n characters of + or ->   (vertex 1 first; - = reference order reversed)
//   vertex <v> <i> <j> <k> <offset> <forward|reversed>
//   label <edge id> <generator>
//   end
//
// A vertex line gives the triangle word, the rotation offset and the reading
// direction; the labels it induces on the vertex's edge-ends, in oriented
// cyclic order, are word[offset], word[offset+1], ... (or -1, -2 reversed).
struct ColouringCertificate {
    Presentation presentation;
    Multigraph graph;
    std::string form;
    OrientationMask orientation = 0;
    struct VertexRecord {
        TriangleWord word{};
        int offset = 0;
        bool reversed = false;
    };
    std::vector<VertexRecord> vertices;  // index 1..n
    std::vector<int> labels;             // by edge id
};

inline ColouringCertificate make_certificate(const ColouringProblem& p, const Colouring& c)
{
    ColouringCertificate cert;
    cert.presentation = p.presentation;
    cert.graph = p.graph;
    cert.form = canonical_form(p.graph).hex();
    cert.orientation = p.orientation;
    cert.vertices.resize(static_cast<std::size_t>(p.graph.order()) + 1);
    for (int v = 1; v <= p.graph.order(); ++v) {
        const auto& u = c.uses[static_cast<std::size_t>(v)];
        cert.vertices[static_cast<std::size_t>(v)] = {p.presentation.triangles[static_cast<std::size_t>(u.triangle)], u.offset, u.reversed};
    }
    cert.labels = c.edge_labels;
    return cert;
}

inline std::string serialize_certificate(const ColouringCertificate& c)
{
    std::string out = "certificate 1\n" + serialize_presentation(c.presentation);
    out += "graph " + std::to_string(c.graph.order()) + " " + std::to_string(c.graph.size()) + "\n";
    for (const auto& e : c.graph.edges()) out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    out += "form " + c.form + "\norientation ";
    for (int v = 1; v <= c.graph.order(); ++v) out += ((c.orientation >> (v - 1)) & 1) ? '-' : '+';
    out += "\n";
    for (int v = 1; v <= c.graph.order(); ++v) {
        const auto& r = c.vertices[static_cast<std::size_t>(v)];
        out += "vertex " + std::to_string(v) + " " + std::to_string(r.word[0]) + " " + std::to_string(r.word[1]) + " " + std::to_string(r.word[2]) + " " +
               std::to_string(r.offset) + (r.reversed ? " reversed\n" : " forward\n");
    }
    for (std::size_t e = 0; e < c.labels.size(); ++e) out += "label " + std::to_string(e) + " " + std::to_string(c.labels[e]) + "\n";
    return out + "end\n";
}

inline ColouringCertificate parse_certificate(std::string_view data)
{
    ColouringCertificate c;
    detail::LineTokenizer tok(data);
    auto expect = [&](std::string_view word) {
        if (!tok.next_line()) throw ParseError("unexpected end of certificate, expected '" + std::string(word) + "'", data.size());
        if (tok.word() != word) tok.fail_at("expected '" + std::string(word) + "'", 0);
    };
    expect("certificate");
    if (tok.integer() != 1) tok.fail("unsupported certificate version");
    // The presentation block runs until the graph line.
    expect("presentation");
    std::size_t start = tok.line_start();
    std::size_t end = start;
    for (;;) {
        if (!tok.next_line()) throw ParseError("missing graph block", data.size());
        if (tok.word() == "graph") {
            end = tok.line_start();
            break;
        }
    }
    try {
        c.presentation = parse_presentation(data.substr(start, end - start));
    } catch (const PresentationError& e) {
        throw ParseError(std::string("bad presentation block: ") + e.what(), start);
    }
    long long n = tok.integer(), m = tok.integer();
    if (n < 1 || n > 64 || m < 0) tok.fail("graph size out of range");
    c.graph = Multigraph(static_cast<int>(n));
    for (long long k = 0; k < m; ++k) {
        expect("e");
        long long u = tok.integer(), v = tok.integer();
        if (u < 1 || v < 1 || u > n || v > n || u == v) tok.fail("bad edge");
        c.graph.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    expect("form");
    c.form = std::string(tok.word());
    expect("orientation");
    auto bits = tok.word();
    if (bits.size() != static_cast<std::size_t>(n)) tok.fail("orientation needs one character per vertex");
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '+' && bits[i] != '-') tok.fail("orientation characters must be + or -");
        if (bits[i] == '-') c.orientation |= OrientationMask{1} << i;
    }
    c.vertices.resize(static_cast<std::size_t>(n) + 1);
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (long long k = 0; k < n; ++k) {
        expect("vertex");
        long long v = tok.integer();
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) tok.fail("bad or repeated vertex number");
        seen[static_cast<std::size_t>(v)] = 1;
        auto& r = c.vertices[static_cast<std::size_t>(v)];
        for (auto& x : r.word) x = static_cast<int>(tok.integer());
        long long off = tok.integer();
        if (off < 0 || off > 2) tok.fail("offset must be 0, 1 or 2");
        r.offset = static_cast<int>(off);
        auto dir = tok.word();
        if (dir != "forward" && dir != "reversed") tok.fail("direction must be forward or reversed");
        r.reversed = dir == "reversed";
    }
    c.labels.assign(static_cast<std::size_t>(m), 0);
    std::vector<char> labelled(static_cast<std::size_t>(m), 0);
    for (long long k = 0; k < m; ++k) {
        expect("label");
        long long e = tok.integer(), x = tok.integer();
        if (e < 0 || e >= m || labelled[static_cast<std::size_t>(e)]) tok.fail("bad or repeated edge id");
        labelled[static_cast<std::size_t>(e)] = 1;
        c.labels[static_cast<std::size_t>(e)] = static_cast<int>(x);
    }
    expect("end");
    return c;
}

enum class RejectReason { none, malformed, graph, canonical_form, octagon, vertex_consistency, edge_consistency, adjacency };

inline const char* reason_name(RejectReason r)
{
    switch (r) {
    case RejectReason::none: return "accepted";
    case RejectReason::malformed: return "malformed";
    case RejectReason::graph: return "graph";
    case RejectReason::canonical_form: return "canonical form";
    case RejectReason::octagon: return "octagon property";
    case RejectReason::vertex_consistency: return "vertex consistency";
    case RejectReason::edge_consistency: return "edge consistency";
    case RejectReason::adjacency: return "adjacency";
    }
    return "unknown";
}

struct VerifyResult {
    RejectReason reason = RejectReason::none;
    std::string detail;
    explicit operator bool() const { return reason == RejectReason::none; }
};

/// Checks a certificate from scratch. Deliberately shares no logic with the
/// search: rotation, face tracing, bipartition and reading are redone here.
inline VerifyResult verify_colouring(const ColouringCertificate& c)
{
    auto reject = [](RejectReason r, std::string d) { return VerifyResult{r, std::move(d)}; };
    const auto& g = c.graph;
    const int n = g.order(), m = g.size();
    if (c.vertices.size() != static_cast<std::size_t>(n) + 1 || c.labels.size() != static_cast<std::size_t>(m))
        return reject(RejectReason::malformed, "record counts do not match the graph");

    // Reference order: incident (neighbour, edge) pairs ascending; '-' reverses it.
    std::vector<std::array<int, 3>> rot(static_cast<std::size_t>(n) + 1);
    {
        std::vector<std::vector<std::pair<int, int>>> inc(static_cast<std::size_t>(n) + 1);
        for (int e = 0; e < m; ++e) {
            inc[static_cast<std::size_t>(g.edge(e).u)].push_back({g.edge(e).v, e});
            inc[static_cast<std::size_t>(g.edge(e).v)].push_back({g.edge(e).u, e});
        }
        for (int v = 1; v <= n; ++v) {
            auto& l = inc[static_cast<std::size_t>(v)];
            if (l.size() != 3) return reject(RejectReason::graph, "vertex " + std::to_string(v) + " does not have degree 3");
            std::sort(l.begin(), l.end());
            bool rev = (c.orientation >> (v - 1)) & 1;
            rot[static_cast<std::size_t>(v)] = {l[0].second, rev ? l[2].second : l[1].second, rev ? l[1].second : l[2].second};
        }
    }
    if (canonical_form(g).hex() != c.form) return reject(RejectReason::canonical_form, "recorded canonical form does not match the graph");

    // Two-colouring by breadth-first search from vertex 1.
    std::vector<int> side(static_cast<std::size_t>(n) + 1, -1);
    side[1] = 0;
    std::deque<int> q{1};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int e : rot[static_cast<std::size_t>(v)]) {
            int w = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
            if (side[static_cast<std::size_t>(w)] < 0) {
                side[static_cast<std::size_t>(w)] = 1 - side[static_cast<std::size_t>(v)];
                q.push_back(w);
            } else if (side[static_cast<std::size_t>(w)] == side[static_cast<std::size_t>(v)]) {
                return reject(RejectReason::graph, "graph is not bipartite");
            }
        }
    }
    for (int v = 1; v <= n; ++v)
        if (side[static_cast<std::size_t>(v)] < 0) return reject(RejectReason::graph, "graph is not connected");

    // Faces: leave the head of each traversal along the next edge of its rotation.
    {
        std::vector<char> done(static_cast<std::size_t>(2 * m), 0);
        auto head = [&](int e, int dir) { return dir ? g.edge(e).u : g.edge(e).v; };
        int faces = 0;
        for (int s = 0; s < 2 * m; ++s) {
            if (done[static_cast<std::size_t>(s)]) continue;
            int len = 0, cur = s;
            do {
                done[static_cast<std::size_t>(cur)] = 1;
                ++len;
                int e = cur / 2, h = head(e, cur % 2);
                const auto& r = rot[static_cast<std::size_t>(h)];
                int i = static_cast<int>(std::find(r.begin(), r.end(), e) - r.begin());
                int next = r[static_cast<std::size_t>((i + 1) % 3)];
                cur = 2 * next + (g.edge(next).u == h ? 0 : 1);
            } while (cur != s && len <= 8);
            if (len != 8) return reject(RejectReason::octagon, "face through traversal " + std::to_string(s) + " does not have length 8");
            ++faces;
        }
        if (2 - n + m - faces != 2 * (m / 12)) return reject(RejectReason::octagon, "face count does not match the surface budget");
    }

    // Each vertex: word from the presentation, direction by class, induced labels.
    std::vector<std::array<int, 3>> end_label(static_cast<std::size_t>(n) + 1), end_pos(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) {
        const auto& r = c.vertices[static_cast<std::size_t>(v)];
        const std::string at = "vertex " + std::to_string(v);
        bool in_presentation = false;
        for (const auto& t : c.presentation.triangles)
            for (int k = 0; k < 3; ++k)
                if (t[static_cast<std::size_t>(k)] == r.word[0] && t[static_cast<std::size_t>((k + 1) % 3)] == r.word[1] &&
                    t[static_cast<std::size_t>((k + 2) % 3)] == r.word[2])
                    in_presentation = true;
        if (!in_presentation) return reject(RejectReason::vertex_consistency, at + ": word is not a triangle of the presentation");
        // One class reads forwards and the other backwards; vertex 1 fixes which.
        if (r.reversed != (c.vertices[1].reversed != (side[static_cast<std::size_t>(v)] == 1)))
            return reject(RejectReason::vertex_consistency, at + ": reading direction does not match its class");
        for (int i = 0; i < 3; ++i) {
            int k = r.reversed ? r.offset - i : r.offset + i;
            k = ((k % 3) + 3) % 3;
            end_pos[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)] = k;
            end_label[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)] = r.word[static_cast<std::size_t>(k)];
        }
    }
    auto slot = [&](int v, int e) {
        const auto& r = rot[static_cast<std::size_t>(v)];
        return static_cast<std::size_t>(std::find(r.begin(), r.end(), e) - r.begin());
    };
    for (int e = 0; e < m; ++e) {
        int u = g.edge(e).u, v = g.edge(e).v, rec = c.labels[static_cast<std::size_t>(e)];
        int lu = end_label[static_cast<std::size_t>(u)][slot(u, e)], lv = end_label[static_cast<std::size_t>(v)][slot(v, e)];
        const std::string at = "edge " + std::to_string(e) + " (" + std::to_string(u) + "-" + std::to_string(v) + ")";
        if (lu == lv && lu != rec) return reject(RejectReason::edge_consistency, at + ": recorded label differs from both ends");
        if (lu != rec) return reject(RejectReason::vertex_consistency, "vertex " + std::to_string(u) + " reads " + std::to_string(lu) + " on " + at);
        if (lv != rec) return reject(RejectReason::vertex_consistency, "vertex " + std::to_string(v) + " reads " + std::to_string(lv) + " on " + at);
    }
    // Same triangle on both sides of an edge, at the same word position.
    for (int e = 0; e < m; ++e) {
        int u = g.edge(e).u, v = g.edge(e).v;
        auto wu = least_rotation(c.vertices[static_cast<std::size_t>(u)].word), wv = least_rotation(c.vertices[static_cast<std::size_t>(v)].word);
        if (wu != wv) continue;
        // Positions are compared on the stored rotation, so rebase both to the least rotation.
        auto rebase = [&](int x, std::size_t s) {
            const auto& w = c.vertices[static_cast<std::size_t>(x)].word;
            int shift = 0;
            while (!(w[static_cast<std::size_t>(shift)] == wu[0] && w[static_cast<std::size_t>((shift + 1) % 3)] == wu[1] &&
                     w[static_cast<std::size_t>((shift + 2) % 3)] == wu[2]))
                ++shift;
            return ((end_pos[static_cast<std::size_t>(x)][s] - shift) % 3 + 3) % 3;
        };
        if (rebase(u, slot(u, e)) == rebase(v, slot(v, e)))
            return reject(RejectReason::adjacency, "vertices " + std::to_string(u) + " and " + std::to_string(v) + " fold the same triangle corner");
    }
    return {};
}

inline VerifyResult verify_certificate_text(std::string_view text)
{
    try {
        return verify_colouring(parse_certificate(text));
    } catch (const std::exception& e) {
        return {RejectReason::malformed, e.what()};
    }
}

}  // namespace periodic
