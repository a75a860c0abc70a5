#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <periodic/certificate.hpp>
#include <periodic/colouring.hpp>
#include <periodic/enumerate.hpp>
#include <periodic/graph_io.hpp>
#include <periodic/octagons.hpp>
#include <periodic/pipeline.hpp>
#include <periodic/presentations.hpp>

namespace fs = std::filesystem;
using namespace periodic;

namespace {

constexpr int exit_error = 1;
constexpr int exit_nothing_found = 10;

std::string read_file(const std::string& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes to the named file, or to stdout for "" or "-".
void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::vector<Multigraph> read_graph_file(const std::string& path)
{
    auto text = read_file(path);
    return read_graphs(sniff_format(text), text);
}

void check_genus(int genus, bool huge)
{
    if (genus < 2) throw std::runtime_error("genus must be at least 2: lower genus surfaces have no octagon decomposition");
    if (genus >= 3 && !huge)
        throw std::runtime_error("genus " + std::to_string(genus) + " means " + std::to_string(surface_budget(genus).dual_vertices) +
                                 "-vertex dual graphs, far beyond exhaustive search; pass --i-know-this-is-huge to try anyway");
}

// generate --------------------------------------------------------------------

struct GenerateArgs {
    int n = 16;
    int doubles = 0;
    std::string out;
    bool count_only = false;
    bool all_cubic = false;
    unsigned jobs = 1;
};

int run_generate(const GenerateArgs& a)
{
    if (a.n < 4 || a.n % 2 != 0) throw std::runtime_error("--n must be an even number of at least 4");
    std::vector<Generated> graphs;
    std::ostringstream counts;
    if (a.doubles == 0) {
        auto cubic = gen_cubic_simple(a.n, a.jobs);
        auto bip = filter_bipartite(cubic);
        counts << "cubic " << cubic.size() << "\nbipartite " << bip.size() << "\n";
        graphs = a.all_cubic ? std::move(cubic) : std::move(bip);
    } else {
        auto lc = lift_stage(a.n, a.doubles, a.jobs);
        counts << "pre_lift " << lc.pre_lift << "\nlifted_raw " << lc.lifted_raw << "\nlifted " << lc.lifted.size() << "\n";
        graphs = std::move(lc.lifted);
    }
    if (a.count_only) {
        std::cout << counts.str();
        return 0;
    }
    std::string text;
    auto format = a.doubles == 0 ? GraphFormat::graph6 : GraphFormat::multigraph_text;
    for (const auto& g : graphs) text += write_graph(format, g.graph);
    write_output(a.out, text);
    std::cerr << counts.str();
    return 0;
}

// octagons --------------------------------------------------------------------

struct OctagonArgs {
    std::string in;
    std::string method = "both";
    int genus = 2;
    bool huge = false;
    std::string report;
    unsigned jobs = 1;
};

void append_sets(std::ostringstream& o, const Multigraph& g, const std::vector<OctagonSet>& sets, const char* label)
{
    for (std::size_t i = 0; i < sets.size(); ++i) {
        o << label << " " << i + 1;
        if (!sets[i].orientations.empty()) o << " orientation " << hex64(sets[i].orientations.front());
        o << "\n";
        for (const auto& f : sets[i].faces) {
            o << " ";
            for (int v : f.vertices(g)) o << " " << v;
            o << "\n";
        }
    }
}

int run_octagons(const OctagonArgs& a)
{
    check_genus(a.genus, a.huge);
    auto method = parse_method(a.method);
    const int order = surface_budget(a.genus).dual_vertices;
    bool dfs = method != OctagonMethod::orientation, ori = method != OctagonMethod::dfs;
    std::ostringstream o;
    o << "octagons method=" << a.method << " genus=" << a.genus << "\n";
    std::size_t index = 0, with_sets = 0;
    for (const auto& g : read_graph_file(a.in)) {
        ++index;
        if (g.order() != order) throw std::runtime_error("graph " + std::to_string(index) + " has " + std::to_string(g.order()) + " vertices, expected " + std::to_string(order));
        auto s = summarize_octagons(g, dfs, ori, a.jobs);
        o << "\ngraph " << index << "\nform " << canonical_form(g).hex() << "\nname " << s.name << "\n";
        if (ori) {
            o << "valid_assignments " << s.valid_assignments << "\nsets " << s.orientation_sets << "\nmasks";
            for (auto m : s.sweep.valid) o << " " << hex64(m);
            o << "\n";
            append_sets(o, g, s.sweep.sets, "set");
        }
        if (dfs) {
            auto d = dfs_octagon_sets(g);
            auto kept = double_edge_orientation_filter(g, d.sets);
            o << "dfs_directed " << d.directed_sets << "\ndfs_sets " << d.sets.size() << "\nfiltered_sets " << kept.kept.size() << "\n";
            if (!ori) append_sets(o, g, kept.kept, "dfs_set");
        }
        if (s.valid_assignments > 0 || s.filtered_sets > 0) ++with_sets;
    }
    write_output(a.report, o.str());
    std::cerr << index << " graphs, " << with_sets << " with six-octagon sets\n";
    return 0;
}

/// Orientation masks per canonical form, read back from an octagons report.
std::map<std::string, std::vector<OrientationMask>> read_octagon_masks(const std::string& path)
{
    std::map<std::string, std::vector<OrientationMask>> out;
    std::istringstream in(read_file(path));
    std::string line, form;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "form") ls >> form;
        if (key != "masks") continue;
        auto& masks = out[form];
        std::string m;
        while (ls >> m) masks.push_back(static_cast<OrientationMask>(std::stoull(m, nullptr, 16)));
    }
    return out;
}

// colour ----------------------------------------------------------------------

struct ColourArgs {
    std::string graphs;
    std::string presentation;
    std::string octagons;
    bool all = false;
    bool first = false;
    std::string cert_out;
    unsigned jobs = 1;
};

int run_colour(const ColourArgs& a)
{
    auto pres = detail::load_presentation(a.presentation);
    for (const auto& w : pres.multiplicity_warnings()) std::cerr << "warning: " << pres.name << ": " << w << "\n";
    std::map<std::string, std::vector<OrientationMask>> from_report;
    if (!a.octagons.empty()) from_report = read_octagon_masks(a.octagons);
    if (!a.cert_out.empty()) fs::create_directories(a.cert_out);
    SearchOptions opt;
    opt.jobs = a.jobs;
    if (a.first) opt.limit = 1;
    std::size_t index = 0, found_graphs = 0;
    for (const auto& g : read_graph_file(a.graphs)) {
        ++index;
        auto form = canonical_form(g).hex();
        std::vector<OrientationMask> masks;
        if (!a.octagons.empty()) {
            auto it = from_report.find(form);
            if (it == from_report.end()) throw std::runtime_error("graph " + std::to_string(index) + " does not appear in the octagons report");
            masks = it->second;
        } else {
            masks = orientation_octagon_sets(g, a.jobs).valid;
        }
        std::size_t total = 0, written = 0;
        for (auto m : masks) {
            ColouringProblem prob{g, m, pres};
            auto cs = search_colourings(prob, opt);
            total += cs.size();
            for (const auto& c : cs) {
                if (a.cert_out.empty() || (a.first && written > 0)) break;
                auto path = fs::path(a.cert_out) / ("graph" + std::to_string(index) + "-" + hex64(m) + "-" + std::to_string(++written) + ".cert");
                write_output(path.string(), serialize_certificate(make_certificate(prob, c)));
            }
            if (a.first && total > 0) break;
        }
        std::cout << "graph " << index << " " << identify_named_graph(g) << " assignments " << masks.size() << " colourings " << total
                  << (a.first ? " (stopped at first)" : "") << "\n";
        if (total > 0) ++found_graphs;
    }
    return found_graphs > 0 ? 0 : exit_nothing_found;
}

// verify ----------------------------------------------------------------------

int run_verify(const std::string& cert)
{
    auto r = verify_certificate_text(read_file(cert));
    if (r) {
        std::cout << "accepted\n";
        return 0;
    }
    std::cout << "rejected: " << reason_name(r.reason) << ": " << r.detail << "\n";
    return 1;
}

// pipeline --------------------------------------------------------------------

struct PipelineArgs {
    int genus = 2;
    bool huge = false;
    std::string presentations = "T1,T3,T9,T21";
    unsigned jobs = 1;
    std::string cache;
    bool no_cache = false;
    std::string out = "periodic-out";
    int d_min = 0, d_max = 6;
    std::string method = "both";
    std::string format = "text";
};

int run_pipeline_cmd(const PipelineArgs& a)
{
    check_genus(a.genus, a.huge);
    PipelineConfig cfg;
    cfg.genus = a.genus;
    cfg.min_double_edges = a.d_min;
    cfg.max_double_edges = a.d_max;
    cfg.method = parse_method(a.method);
    cfg.jobs = a.jobs;
    cfg.out_dir = a.out;
    std::stringstream list(a.presentations);
    for (std::string item; std::getline(list, item, ',');)
        if (!item.empty()) cfg.presentations.push_back(item);
    // --cache wins, then the environment, then a directory under --out.
    if (!a.no_cache) {
        if (!a.cache.empty())
            cfg.cache_dir = a.cache;
        else if (const char* env = std::getenv("PERIODIC_CACHE_DIR"); env && *env)
            cfg.cache_dir = env;
        else
            cfg.cache_dir = fs::path(a.out) / "cache";
    }
    auto run = run_pipeline(cfg);
    for (const auto& w : run.warnings) std::cerr << "warning: " << w << "\n";
    fs::create_directories(cfg.out_dir);
    auto text = emit_report(run.table, ReportFormat::text);
    auto structured = emit_report(run.table, ReportFormat::structured);
    write_output((cfg.out_dir / "report.txt").string(), text);
    write_output((cfg.out_dir / "report.kv").string(), structured);
    std::cout << (a.format == "structured" ? structured : text);
    std::cerr << "cache: " << run.cache_hits << " hits, " << run.cache_misses << " misses\n";
    return pipeline_exit_code(run.table);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Search for genus-2 periodic apartments in triangular hyperbolic buildings"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Enumerate candidate dual graphs");
    g->add_option("--n", gen.n, "Number of vertices")->capture_default_str();
    g->add_option("--double-edges,-d", gen.doubles, "Number of double edges (0 gives simple graphs, written as graph6)")->capture_default_str();
    g->add_option("--out,-o", gen.out, "Output file (default stdout)");
    g->add_flag("--count-only", gen.count_only, "Print stage counts only");
    g->add_flag("--all-cubic", gen.all_cubic, "With -d 0, write every cubic graph rather than the bipartite ones");
    g->add_option("--jobs,-j", gen.jobs, "Worker threads (0 = all cores)")->capture_default_str();

    OctagonArgs oct;
    auto* o = app.add_subcommand("octagons", "Find the six-octagon face sets of each graph");
    o->add_option("--in,-i", oct.in, "Graph file (graph6 or multigraph text)")->required();
    o->add_option("--method", oct.method, "dfs, orientation or both")->check(CLI::IsMember({"dfs", "orientation", "both"}))->capture_default_str();
    o->add_option("--genus", oct.genus, "Surface genus")->capture_default_str();
    o->add_flag("--i-know-this-is-huge", oct.huge, "Allow genus 3 or more");
    o->add_option("--report,-r", oct.report, "Report file (default stdout)");
    o->add_option("--jobs,-j", oct.jobs, "Worker threads (0 = all cores)")->capture_default_str();

    ColourArgs col;
    auto* c = app.add_subcommand("colour", "Search for triangle colourings");
    c->add_option("--graphs,-g", col.graphs, "Graph file")->required();
    c->add_option("--presentation,-p", col.presentation, "Built-in name (T1, T3, T9, T21) or presentation file")->required();
    c->add_option("--octagons", col.octagons, "Octagons report supplying the orientation assignments");
    auto* all = c->add_flag("--all", col.all, "Enumerate every colouring (default)");
    c->add_flag("--first", col.first, "Stop at the first colouring of each graph")->excludes(all);
    c->add_option("--cert-out", col.cert_out, "Directory for certificates");
    c->add_option("--jobs,-j", col.jobs, "Worker threads (0 = all cores)")->capture_default_str();

    std::string cert;
    auto* v = app.add_subcommand("verify", "Check a colouring certificate");
    v->add_option("--cert", cert, "Certificate file")->required();

    PipelineArgs pipe;
    auto* p = app.add_subcommand("pipeline", "Run generation, octagons and colouring end to end");
    p->add_option("--genus", pipe.genus, "Surface genus")->capture_default_str();
    p->add_flag("--i-know-this-is-huge", pipe.huge, "Allow genus 3 or more");
    p->add_option("--presentations", pipe.presentations, "Comma-separated built-in names or files")->capture_default_str();
    p->add_option("--jobs,-j", pipe.jobs, "Worker threads (0 = all cores)")->capture_default_str();
    p->add_option("--cache", pipe.cache, "Stage cache directory (else $PERIODIC_CACHE_DIR, else OUT/cache)");
    p->add_flag("--no-cache", pipe.no_cache, "Recompute every stage");
    p->add_option("--out", pipe.out, "Output directory")->capture_default_str();
    p->add_option("--min-double-edges", pipe.d_min, "Smallest number of double edges")->capture_default_str();
    p->add_option("--max-double-edges", pipe.d_max, "Largest number of double edges")->capture_default_str();
    p->add_option("--method", pipe.method, "dfs, orientation or both")->check(CLI::IsMember({"dfs", "orientation", "both"}))->capture_default_str();
    p->add_option("--format", pipe.format, "Report printed on stdout")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_error;
    }
    try {
        if (*g) return run_generate(gen);
        if (*o) return run_octagons(oct);
        if (*c) return run_colour(col);
        if (*v) return run_verify(cert);
        if (*p) return run_pipeline_cmd(pipe);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
