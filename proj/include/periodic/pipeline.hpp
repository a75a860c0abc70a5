#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "certificate.hpp"
#include "colouring.hpp"
#include "enumerate.hpp"
#include "graph_io.hpp"
#include "octagon_dfs.hpp"
#include "octagons.hpp"
#include "parallel.hpp"
#include "presentations.hpp"
#include "surface.hpp"

namespace periodic {

enum class OctagonMethod { dfs, orientation, both };

inline const char* method_name(OctagonMethod m)
{
    switch (m) {
    case OctagonMethod::dfs: return "dfs";
    case OctagonMethod::orientation: return "orientation";
    case OctagonMethod::both: return "both";
    }
    return "both";
}

inline OctagonMethod parse_method(std::string_view s)
{
    if (s == "dfs") return OctagonMethod::dfs;
    if (s == "orientation") return OctagonMethod::orientation;
    if (s == "both") return OctagonMethod::both;
    throw std::invalid_argument("unknown octagon method '" + std::string(s) + "'");
}

struct PipelineConfig {
    int genus = 2;
    int min_double_edges = 0;
    int max_double_edges = 6;
    std::vector<std::string> presentations;  // built-in names or file paths
    OctagonMethod method = OctagonMethod::both;
    unsigned jobs = 1;
    std::filesystem::path cache_dir;  // empty: no caching
    std::filesystem::path out_dir;    // empty: certificates are verified in memory only
};

// Stage cache -----------------------------------------------------------------

/// 64-bit FNV-1a; stable across runs and platforms, unlike std::hash.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 14695981039346656037ull)
{
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Content-addressed store of stage outputs. Each file is named by a hash of
/// the stage and everything its output depends on, and starts with a digest
/// line covering the payload so edited or truncated files are recomputed.
class StageCache {
public:
    explicit StageCache(std::filesystem::path dir = {}) : dir_(std::move(dir)) {}

    template <typename Compute>
    std::string get_or_compute(std::string_view stage, std::string_view key, Compute&& compute)
    {
        if (dir_.empty()) return compute();
        auto path = path_for(stage, key);
        if (std::ifstream in{path, std::ios::binary}) {
            std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
            auto nl = text.find('\n');
            constexpr std::string_view tag = "digest ";
            if (nl != std::string::npos && text.compare(0, tag.size(), tag) == 0) {
                std::string payload = text.substr(nl + 1);
                if (text.substr(tag.size(), nl - tag.size()) == hex64(fnv1a(payload))) {
                    ++hits_;
                    return payload;
                }
            }
            warnings_.push_back("cache file " + path.string() + " failed its digest check; recomputing");
        }
        ++misses_;
        std::string payload = compute();
        std::filesystem::create_directories(dir_);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
            out << "digest " << hex64(fnv1a(payload)) << '\n' << payload;
        }
        std::filesystem::rename(tmp, path);
        return payload;
    }

    std::filesystem::path path_for(std::string_view stage, std::string_view key) const
    {
        std::string material(stage);
        material += '\n';
        material += key;
        return dir_ / (std::string(stage) + "-" + hex64(fnv1a(material)) + ".txt");
    }

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::filesystem::path dir_;
    std::size_t hits_ = 0, misses_ = 0;
    std::vector<std::string> warnings_;
};

// Verdict table ---------------------------------------------------------------

struct StageCounts {
    int double_edges = 0;
    std::size_t cubic = 0;       // d = 0 only: all connected cubic graphs before the bipartite filter
    std::size_t pre_lift = 0;    // d > 0: bipartite multigraphs with d doubles before lifting
    std::size_t lifted_raw = 0;  // d > 0: successful lifts before deduplication
    std::size_t graphs = 0;      // graphs entering the octagon stage
    std::size_t dfs_survivors = 0;
    std::size_t orientation_survivors = 0;
    std::size_t filtered_survivors = 0;
    std::size_t candidates = 0;
};

struct CandidateInfo {
    std::string name;
    std::string form;
    int double_edges = 0;
    Multigraph graph;
    std::vector<OrientationMask> masks;  // orientation-valid assignments
    std::size_t orientation_sets = 0;
    std::size_t dfs_directed = 0;
    std::size_t dfs_sets = 0;
    std::size_t filtered_sets = 0;
};

struct VerdictRow {
    std::string graph;
    std::string form;
    std::size_t octagon_sets_tried = 0;  // orientation-valid assignments searched
    std::size_t seeds = 0;               // first-vertex choices per assignment
    std::size_t colourings = 0;
    bool exists = false;
    std::string certificate;             // path relative to the output directory
    bool certificate_verified = false;
    std::vector<std::string> listing;    // one line per triangle: word and the vertices carrying it

    std::size_t search_space() const { return octagon_sets_tried * seeds; }
};

struct PresentationVerdict {
    std::string name;
    std::string error;  // non-empty when the presentation could not be loaded
    std::vector<VerdictRow> rows;

    bool found() const
    {
        for (const auto& r : rows)
            if (r.exists) return true;
        return false;
    }
};

struct VerdictTable {
    int genus = 2;
    SurfaceBudget budget;
    int min_double_edges = 0, max_double_edges = 6;
    OctagonMethod method = OctagonMethod::both;
    std::vector<StageCounts> stages;
    std::vector<CandidateInfo> candidates;  // ordered by canonical form
    std::vector<PresentationVerdict> presentations;

    bool any_found() const
    {
        for (const auto& p : presentations)
            if (p.found()) return true;
        return false;
    }
};

struct PipelineRun {
    VerdictTable table;
    std::vector<std::string> warnings;  // not part of any report: they depend on cache state
    std::size_t cache_hits = 0, cache_misses = 0;
};

namespace detail {

inline std::string masks_text(const std::vector<OrientationMask>& masks)
{
    std::string out;
    for (auto m : masks) out += " " + hex64(m);
    return out;
}

inline std::string generate_payload(int n, int d, unsigned jobs)
{
    std::string out = "generate n=" + std::to_string(n) + " d=" + std::to_string(d) + "\n";
    std::vector<Generated> graphs;
    if (d == 0) {
        auto all = gen_cubic_simple(n, jobs);
        out += "cubic " + std::to_string(all.size()) + "\n";
        graphs = filter_bipartite(all);
    } else {
        auto lc = lift_stage(n, d, jobs);
        out += "pre_lift " + std::to_string(lc.pre_lift) + "\nlifted_raw " + std::to_string(lc.lifted_raw) + "\n";
        graphs = std::move(lc.lifted);
    }
    out += "graphs " + std::to_string(graphs.size()) + "\n";
    for (const auto& gg : graphs) out += write_multigraph_text(gg.graph);
    return out;
}

struct GeneratedStage {
    std::map<std::string, std::size_t> counts;
    std::vector<Multigraph> graphs;
};

inline GeneratedStage parse_generate_payload(const std::string& payload)
{
    GeneratedStage s;
    std::istringstream in(payload);
    std::string line, rest;
    std::getline(in, line);  // title
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        std::size_t value = 0;
        ls >> key >> value;
        s.counts[key] = value;
        if (key == "graphs") break;
    }
    rest.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    s.graphs = read_multigraph_text_all(rest);
    return s;
}

/// One line per graph: form, name, orientation counts, DFS counts and masks.
inline std::string octagon_payload(const std::vector<Multigraph>& graphs, OctagonMethod method, unsigned jobs)
{
    bool dfs = method != OctagonMethod::orientation;
    auto lines = parallel_map(graphs.size(), jobs, [&](std::size_t i) {
        const auto& g = graphs[i];
        auto s = summarize_octagons(g, dfs, true, 1);
        bool lemma = true;
        for (auto m : s.sweep.valid) lemma = lemma && double_edges_opposite(RotationSystem(g, m));
        bool by_orientation = !s.sweep.valid.empty() && lemma;
        bool candidate = method == OctagonMethod::orientation ? by_orientation
                         : method == OctagonMethod::dfs       ? s.filtered_sets > 0
                                                              : by_orientation && s.filtered_sets > 0;
        std::string out = "graph " + std::to_string(i) + " form " + canonical_form(g).hex() + " name " + s.name;
        out += " valid " + std::to_string(s.valid_assignments) + " sets " + std::to_string(s.orientation_sets);
        out += " lemma " + std::string(lemma ? "1" : "0");
        out += " dfs_directed " + std::to_string(s.dfs_directed) + " dfs_sets " + std::to_string(s.dfs_sets);
        out += " filtered " + std::to_string(s.filtered_sets) + " candidate " + (candidate ? "1" : "0");
        out += " masks" + masks_text(s.sweep.valid) + "\n";
        return out;
    });
    std::string out = std::string("octagons method=") + method_name(method) + "\n";
    for (const auto& l : lines) out += l;
    return out;
}

struct OctagonRecord {
    std::string form, name;
    std::size_t valid = 0, sets = 0, dfs_directed = 0, dfs_sets = 0, filtered = 0;
    bool lemma = true, candidate = false;
    std::vector<OrientationMask> masks;
};

inline std::vector<OctagonRecord> parse_octagon_payload(const std::string& payload)
{
    std::vector<OctagonRecord> out;
    std::istringstream in(payload);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        OctagonRecord r;
        std::string key, idx;
        int lemma = 1, cand = 0;
        ls >> key >> idx >> key >> r.form >> key >> r.name >> key >> r.valid >> key >> r.sets >> key >> lemma >> key >> r.dfs_directed >> key >>
            r.dfs_sets >> key >> r.filtered >> key >> cand >> key;
        r.lemma = lemma != 0;
        r.candidate = cand != 0;
        std::string m;
        while (ls >> m) r.masks.push_back(static_cast<OrientationMask>(std::stoull(m, nullptr, 16)));
        out.push_back(std::move(r));
    }
    return out;
}

/// Exhaustive search over every orientation-valid assignment of one graph.
/// Records per-assignment counts and the first colouring found, as a certificate.
inline std::string colour_payload(const CandidateInfo& c, const Presentation& p, unsigned jobs)
{
    auto found = parallel_map(c.masks.size(), jobs, [&](std::size_t i) {
        ColouringProblem prob{c.graph, c.masks[i], p};
        return search_colourings(prob);
    });
    std::string out = "colour\n";
    std::size_t total = 0;
    for (std::size_t i = 0; i < found.size(); ++i) {
        out += "mask " + hex64(c.masks[i]) + " colourings " + std::to_string(found[i].size()) + "\n";
        total += found[i].size();
    }
    out += "total " + std::to_string(total) + "\n";
    for (std::size_t i = 0; i < found.size(); ++i)
        if (!found[i].empty()) {
            out += serialize_certificate(make_certificate(ColouringProblem{c.graph, c.masks[i], p}, found[i].front()));
            break;
        }
    return out;
}

/// Triangles in presentation order, each with the vertices it sits on.
inline std::vector<std::string> vertex_listing(const ColouringCertificate& cert)
{
    std::vector<std::string> out;
    for (const auto& t : cert.presentation.triangles) {
        std::string vs;
        for (int v = 1; v < static_cast<int>(cert.vertices.size()); ++v)
            if (least_rotation(cert.vertices[static_cast<std::size_t>(v)].word) == t) vs += " " + std::to_string(v);
        if (!vs.empty()) out.push_back("(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")" + vs);
    }
    return out;
}

inline std::string file_safe(std::string s)
{
    for (char& ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-') ch = '_';
    return s;
}

inline Presentation load_presentation(const std::string& spec)
{
    for (const auto& name : builtin_names())
        if (name == spec) return builtin(spec);
    std::ifstream in{spec, std::ios::binary};
    if (!in) throw std::runtime_error("cannot open presentation file '" + spec + "'");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_presentation(text);
}

}  // namespace detail

/// generate -> octagons -> filter -> colour, with every stage cached.
inline PipelineRun run_pipeline(const PipelineConfig& cfg)
{
    if (cfg.genus < 2) throw std::invalid_argument("genus must be at least 2");
    if (cfg.min_double_edges < 0 || cfg.max_double_edges < cfg.min_double_edges) throw std::invalid_argument("bad double-edge range");
    PipelineRun run;
    auto& t = run.table;
    t.genus = cfg.genus;
    t.budget = surface_budget(cfg.genus);
    t.min_double_edges = cfg.min_double_edges;
    t.max_double_edges = cfg.max_double_edges;
    t.method = cfg.method;
    const int n = t.budget.dual_vertices;
    StageCache cache(cfg.cache_dir);

    for (int d = cfg.min_double_edges; d <= cfg.max_double_edges; ++d) {
        std::string key = "v1 n=" + std::to_string(n) + " d=" + std::to_string(d);
        auto gen = detail::parse_generate_payload(cache.get_or_compute("generate", key, [&] { return detail::generate_payload(n, d, cfg.jobs); }));
        StageCounts sc;
        sc.double_edges = d;
        sc.cubic = gen.counts["cubic"];
        sc.pre_lift = gen.counts["pre_lift"];
        sc.lifted_raw = gen.counts["lifted_raw"];
        sc.graphs = gen.graphs.size();

        std::string okey = "v1 method=" + std::string(method_name(cfg.method)) + "\n";
        for (const auto& g : gen.graphs) okey += write_multigraph_text(g);
        auto recs = detail::parse_octagon_payload(
            cache.get_or_compute("octagons", okey, [&] { return detail::octagon_payload(gen.graphs, cfg.method, cfg.jobs); }));
        if (recs.size() != gen.graphs.size()) throw std::runtime_error("octagon stage returned the wrong number of graphs");
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const auto& r = recs[i];
            if (r.dfs_sets > 0) ++sc.dfs_survivors;
            if (r.valid > 0) ++sc.orientation_survivors;
            if (r.filtered > 0) ++sc.filtered_survivors;
            if (!r.lemma) run.warnings.push_back("graph " + r.form + " has a valid assignment with equally oriented double-edge endpoints");
            if (!r.candidate) continue;
            ++sc.candidates;
            t.candidates.push_back({r.name, r.form, d, gen.graphs[i], r.masks, r.sets, r.dfs_directed, r.dfs_sets, r.filtered});
        }
        t.stages.push_back(sc);
    }
    std::sort(t.candidates.begin(), t.candidates.end(), [](const auto& a, const auto& b) { return a.form < b.form; });

    for (const auto& spec : cfg.presentations) {
        PresentationVerdict pv;
        pv.name = spec;
        Presentation p;
        try {
            p = detail::load_presentation(spec);
            pv.name = p.name;
        } catch (const std::exception& e) {
            pv.error = e.what();
            t.presentations.push_back(std::move(pv));
            continue;
        }
        for (std::size_t ci = 0; ci < t.candidates.size(); ++ci) {
            const auto& c = t.candidates[ci];
            std::string ckey = "v1\n" + serialize_presentation(p) + write_multigraph_text(c.graph) + "masks" + detail::masks_text(c.masks) + "\n";
            auto payload = cache.get_or_compute("colour", ckey, [&] { return detail::colour_payload(c, p, cfg.jobs); });
            VerdictRow row;
            row.graph = c.name;
            row.form = c.form;
            row.octagon_sets_tried = c.masks.size();
            row.seeds = 3 * p.triangles.size();
            auto total_at = payload.find("\ntotal ");
            if (total_at == std::string::npos) throw std::runtime_error("colour stage output is missing its total");
            row.colourings = std::stoull(payload.substr(total_at + 7));
            row.exists = row.colourings > 0;
            if (row.exists) {
                auto cert_text = payload.substr(payload.find("certificate 1\n"));
                auto cert = parse_certificate(cert_text);
                row.listing = detail::vertex_listing(cert);
                row.certificate = "certificates/" + detail::file_safe(p.name) + "-" + std::to_string(ci + 1) + "-" + detail::file_safe(c.name) + ".cert";
                if (!cfg.out_dir.empty()) {
                    auto path = cfg.out_dir / row.certificate;
                    std::filesystem::create_directories(path.parent_path());
                    std::ofstream(path, std::ios::binary | std::ios::trunc) << cert_text;
                    std::ifstream back{path, std::ios::binary};
                    cert_text.assign(std::istreambuf_iterator<char>(back), std::istreambuf_iterator<char>());
                }
                auto verdict = verify_certificate_text(cert_text);
                row.certificate_verified = static_cast<bool>(verdict);
                if (!verdict) pv.error = "certificate " + row.certificate + " rejected: " + reason_name(verdict.reason) + ": " + verdict.detail;
            }
            pv.rows.push_back(std::move(row));
        }
        t.presentations.push_back(std::move(pv));
    }
    run.cache_hits = cache.hits();
    run.cache_misses = cache.misses();
    run.warnings.insert(run.warnings.end(), cache.warnings().begin(), cache.warnings().end());
    return run;
}

// Reports ---------------------------------------------------------------------

enum class ReportFormat { text, structured };

namespace detail {

inline std::string verdict_word(const PresentationVerdict& p)
{
    if (!p.error.empty()) return "error";
    return p.found() ? "found" : "not found";
}

inline std::string structured_report(const VerdictTable& t)
{
    std::string out;
    auto kv = [&](const std::string& k, const std::string& v) { out += k + ": " + v + "\n"; };
    auto num = [](std::size_t v) { return std::to_string(v); };
    kv("report", "periodic-apartments 1");
    kv("genus", std::to_string(t.genus));
    kv("dual_vertices", std::to_string(t.budget.dual_vertices));
    kv("dual_edges", std::to_string(t.budget.dual_edges));
    kv("octagons", std::to_string(t.budget.octagons));
    kv("double_edges", std::to_string(t.min_double_edges) + ".." + std::to_string(t.max_double_edges));
    kv("method", method_name(t.method));
    for (const auto& s : t.stages) {
        std::string p = "stage.d" + std::to_string(s.double_edges) + ".";
        if (s.double_edges == 0) {
            kv(p + "cubic", num(s.cubic));
        } else {
            kv(p + "pre_lift", num(s.pre_lift));
            kv(p + "lifted_raw", num(s.lifted_raw));
        }
        kv(p + "graphs", num(s.graphs));
        kv(p + "dfs_survivors", num(s.dfs_survivors));
        kv(p + "orientation_survivors", num(s.orientation_survivors));
        kv(p + "filtered_survivors", num(s.filtered_survivors));
        kv(p + "candidates", num(s.candidates));
    }
    kv("candidates", num(t.candidates.size()));
    for (std::size_t i = 0; i < t.candidates.size(); ++i) {
        const auto& c = t.candidates[i];
        std::string p = "candidate." + std::to_string(i + 1) + ".";
        kv(p + "name", c.name);
        kv(p + "form", c.form);
        kv(p + "double_edges", std::to_string(c.double_edges));
        kv(p + "valid_assignments", num(c.masks.size()));
        kv(p + "octagon_sets", num(c.orientation_sets));
        kv(p + "dfs_directed", num(c.dfs_directed));
        kv(p + "dfs_sets", num(c.dfs_sets));
        kv(p + "filtered_sets", num(c.filtered_sets));
    }
    kv("presentations", num(t.presentations.size()));
    for (std::size_t i = 0; i < t.presentations.size(); ++i) {
        const auto& pv = t.presentations[i];
        std::string p = "presentation." + std::to_string(i + 1) + ".";
        kv(p + "name", pv.name);
        kv(p + "verdict", verdict_word(pv));
        if (!pv.error.empty()) kv(p + "error", pv.error);
        for (std::size_t j = 0; j < pv.rows.size(); ++j) {
            const auto& r = pv.rows[j];
            std::string q = p + "row." + std::to_string(j + 1) + ".";
            kv(q + "graph", r.graph);
            kv(q + "form", r.form);
            kv(q + "octagon_sets_tried", num(r.octagon_sets_tried));
            kv(q + "seeds", num(r.seeds));
            kv(q + "search_space", num(r.search_space()));
            kv(q + "colourings", num(r.colourings));
            kv(q + "exists", r.exists ? "true" : "false");
            if (!r.exists) continue;
            kv(q + "certificate", r.certificate);
            kv(q + "certificate_verified", r.certificate_verified ? "true" : "false");
            for (std::size_t k = 0; k < r.listing.size(); ++k) kv(q + "listing." + std::to_string(k + 1), r.listing[k]);
        }
    }
    return out;
}

inline std::string text_report(const VerdictTable& t)
{
    std::ostringstream o;
    o << "Periodic apartment search, genus " << t.genus << ": " << t.budget.dual_vertices << " dual vertices, " << t.budget.dual_edges << " edges, "
      << t.budget.octagons << " octagons\n";
    o << "Double edges " << t.min_double_edges << ".." << t.max_double_edges << ", octagon method " << method_name(t.method) << "\n\n";
    o << "Stages\n";
    o << "  d  generated  dfs  orientation  filtered  candidates\n";
    for (const auto& s : t.stages) {
        char line[160];
        std::snprintf(line, sizeof line, "  %d  %9zu  %3zu  %11zu  %8zu  %10zu", s.double_edges, s.graphs, s.dfs_survivors, s.orientation_survivors,
                      s.filtered_survivors, s.candidates);
        o << line;
        if (s.double_edges == 0)
            o << "   (" << s.cubic << " cubic)";
        else
            o << "   (" << s.pre_lift << " before lifting, " << s.lifted_raw << " raw lifts)";
        o << "\n";
    }
    o << "\nCandidates: " << t.candidates.size() << "\n";
    for (std::size_t i = 0; i < t.candidates.size(); ++i) {
        const auto& c = t.candidates[i];
        o << "  " << i + 1 << ". " << c.name << "  d=" << c.double_edges << "  assignments=" << c.masks.size() << "  sets=" << c.orientation_sets
          << "  dfs=" << c.dfs_directed << "/" << c.dfs_sets << "  filtered=" << c.filtered_sets << "\n";
        o << "     form " << c.form << "\n";
    }
    for (const auto& pv : t.presentations) {
        o << "\nPresentation " << pv.name << ": ";
        if (!pv.error.empty())
            o << "error: " << pv.error << "\n";
        else
            o << (pv.found() ? "periodic apartment found" : "no periodic apartment") << "\n";
        // Rows follow the candidate order, so the number identifies the form.
        for (std::size_t j = 0; j < pv.rows.size(); ++j) {
            const auto& r = pv.rows[j];
            o << "  " << j + 1 << ". " << r.graph << "  sets tried " << r.octagon_sets_tried << " x " << r.seeds << " seeds = " << r.search_space()
              << "  colourings " << r.colourings << "\n";
            if (!r.exists) continue;
            o << "     certificate " << r.certificate << (r.certificate_verified ? " (verified)" : " (REJECTED)") << "\n";
            for (const auto& l : r.listing) o << "       " << l << "\n";
        }
    }
    return o.str();
}

}  // namespace detail

inline std::string emit_report(const VerdictTable& t, ReportFormat f)
{
    return f == ReportFormat::structured ? detail::structured_report(t) : detail::text_report(t);
}

/// 0 when some presentation yields an apartment, 10 when none does.
inline int pipeline_exit_code(const VerdictTable& t) { return t.any_found() ? 0 : 10; }

}  // namespace periodic
