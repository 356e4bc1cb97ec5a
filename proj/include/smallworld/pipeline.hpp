#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "smallworld/baselines.hpp"
#include "smallworld/cooccur.hpp"
#include "smallworld/csv.hpp"
#include "smallworld/graph.hpp"
#include "smallworld/ingest.hpp"
#include "smallworld/louvain.hpp"
#include "smallworld/metrics.hpp"
#include "smallworld/version.hpp"

// Run orchestration: config loading, the analyze/louvain/cooccur/export/genres
// commands, and the run manifest. Every command writes its artifacts under one
// output directory, and identical inputs plus identical config produce byte
// identical artifacts (the manifest is the one exception: it records wall
// clock timings).

namespace smallworld {

// Bad configuration or usage: wrong key, wrong value, unusable combination.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem trouble distinct from bad input data.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Filters {
    bool seed_only = false;      // artists with at least one chart hit
    std::string genre;           // empty = off
    std::string country;         // empty = off; dataset country codes
    std::optional<double> top_fraction; // highest-degree slice of the full graph

    bool any() const {
        return seed_only || !genre.empty() || !country.empty() || top_fraction.has_value();
    }
};

struct RunConfig {
    std::string nodes_path;
    std::string edges_path;
    std::string out_dir = "out";
    std::uint64_t seed = 42;
    Filters filters;
    SchemaConfig schema;

    std::size_t louvain_top_n = 20;
    double louvain_min_gain = 1e-7;
    std::size_t louvain_max_passes = 32;

    std::uint64_t cooccur_threshold = 5;
    bool cooccur_inclusive = false;

    std::size_t powerlaw_k_min = 1;
    std::size_t er_instances = 1;
    std::size_t top_n = 20; // listing length for genres / cooccur summaries

    std::string export_format = "edgelist-csv";
    std::string partition_path; // optional community column for export
};

namespace pipeline_detail {

using nlohmann::json;

inline void check_keys(const json& obj, const std::vector<std::string>& allowed,
                       const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

template <typename T>
inline T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    const json& v = obj.at(key);
    if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && !v.is_number_unsigned())
            throw ConfigError(std::string("bad value for '") + key + "': must be non-negative");
    }
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "'");
    }
}

} // namespace pipeline_detail

// Parses a config file with strict keys: anything unrecognized is an error,
// so typos never silently fall back to defaults.
inline RunConfig load_run_config(const std::string& path) {
    using nlohmann::json;
    using namespace pipeline_detail;

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");

    check_keys(root,
               {"nodes", "edges", "out", "seed", "filters", "schema", "louvain", "cooccur",
                "powerlaw", "er_instances", "top_n", "export"},
               "config");

    RunConfig cfg;
    cfg.nodes_path = get_or<std::string>(root, "nodes", "");
    cfg.edges_path = get_or<std::string>(root, "edges", "");
    cfg.out_dir = get_or<std::string>(root, "out", cfg.out_dir);
    cfg.seed = get_or<std::uint64_t>(root, "seed", cfg.seed);
    cfg.er_instances = get_or<std::size_t>(root, "er_instances", cfg.er_instances);
    cfg.top_n = get_or<std::size_t>(root, "top_n", cfg.top_n);

    if (root.contains("filters")) {
        const json& f = root.at("filters");
        check_keys(f, {"seed_only", "genre", "country", "top_fraction"}, "filters");
        cfg.filters.seed_only = get_or<bool>(f, "seed_only", false);
        cfg.filters.genre = get_or<std::string>(f, "genre", "");
        cfg.filters.country = get_or<std::string>(f, "country", "");
        if (f.contains("top_fraction") && !f.at("top_fraction").is_null()) {
            double tf = get_or<double>(f, "top_fraction", 0.0);
            if (!(tf > 0.0) || tf > 1.0)
                throw ConfigError("filters.top_fraction must be in (0, 1]");
            cfg.filters.top_fraction = tf;
        }
    }
    if (root.contains("schema")) {
        const json& s = root.at("schema");
        check_keys(s,
                   {"id_column", "name_column", "genres_column", "chart_hits_column",
                    "popularity_column", "followers_column", "edge_source_column",
                    "edge_target_column", "genre_list_delimiter", "chart_hit_pattern"},
                   "schema");
        auto& sc = cfg.schema;
        sc.id_column = get_or<std::string>(s, "id_column", sc.id_column);
        sc.name_column = get_or<std::string>(s, "name_column", sc.name_column);
        sc.genres_column = get_or<std::string>(s, "genres_column", sc.genres_column);
        sc.chart_hits_column = get_or<std::string>(s, "chart_hits_column", sc.chart_hits_column);
        sc.popularity_column = get_or<std::string>(s, "popularity_column", sc.popularity_column);
        sc.followers_column = get_or<std::string>(s, "followers_column", sc.followers_column);
        sc.edge_source_column = get_or<std::string>(s, "edge_source_column", sc.edge_source_column);
        sc.edge_target_column = get_or<std::string>(s, "edge_target_column", sc.edge_target_column);
        sc.genre_list_delimiter =
            get_or<std::string>(s, "genre_list_delimiter", sc.genre_list_delimiter);
        sc.chart_hit_pattern = get_or<std::string>(s, "chart_hit_pattern", sc.chart_hit_pattern);
    }
    if (root.contains("louvain")) {
        const json& l = root.at("louvain");
        check_keys(l, {"top_n", "min_gain", "max_passes"}, "louvain");
        cfg.louvain_top_n = get_or<std::size_t>(l, "top_n", cfg.louvain_top_n);
        cfg.louvain_min_gain = get_or<double>(l, "min_gain", cfg.louvain_min_gain);
        cfg.louvain_max_passes = get_or<std::size_t>(l, "max_passes", cfg.louvain_max_passes);
        if (cfg.louvain_max_passes == 0) throw ConfigError("louvain.max_passes must be positive");
    }
    if (root.contains("cooccur")) {
        const json& c = root.at("cooccur");
        check_keys(c, {"threshold", "inclusive"}, "cooccur");
        cfg.cooccur_threshold = get_or<std::uint64_t>(c, "threshold", cfg.cooccur_threshold);
        cfg.cooccur_inclusive = get_or<bool>(c, "inclusive", cfg.cooccur_inclusive);
    }
    if (root.contains("powerlaw")) {
        const json& p = root.at("powerlaw");
        check_keys(p, {"k_min"}, "powerlaw");
        cfg.powerlaw_k_min = get_or<std::size_t>(p, "k_min", cfg.powerlaw_k_min);
        if (cfg.powerlaw_k_min == 0) throw ConfigError("powerlaw.k_min must be positive");
    }
    if (root.contains("export")) {
        const json& e = root.at("export");
        check_keys(e, {"format", "partition"}, "export");
        cfg.export_format = get_or<std::string>(e, "format", cfg.export_format);
        cfg.partition_path = get_or<std::string>(e, "partition", cfg.partition_path);
    }
    if (cfg.er_instances == 0) throw ConfigError("er_instances must be positive");
    return cfg;
}

inline nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["nodes"] = cfg.nodes_path;
    j["edges"] = cfg.edges_path;
    j["out"] = cfg.out_dir;
    j["seed"] = cfg.seed;
    j["filters"] = {{"seed_only", cfg.filters.seed_only},
                    {"genre", cfg.filters.genre},
                    {"country", cfg.filters.country},
                    {"top_fraction", cfg.filters.top_fraction
                                         ? nlohmann::json(*cfg.filters.top_fraction)
                                         : nlohmann::json(nullptr)}};
    j["schema"] = {{"id_column", cfg.schema.id_column},
                   {"name_column", cfg.schema.name_column},
                   {"genres_column", cfg.schema.genres_column},
                   {"chart_hits_column", cfg.schema.chart_hits_column},
                   {"popularity_column", cfg.schema.popularity_column},
                   {"followers_column", cfg.schema.followers_column},
                   {"edge_source_column", cfg.schema.edge_source_column},
                   {"edge_target_column", cfg.schema.edge_target_column},
                   {"genre_list_delimiter", cfg.schema.genre_list_delimiter},
                   {"chart_hit_pattern", cfg.schema.chart_hit_pattern}};
    j["louvain"] = {{"top_n", cfg.louvain_top_n},
                    {"min_gain", cfg.louvain_min_gain},
                    {"max_passes", cfg.louvain_max_passes}};
    j["cooccur"] = {{"threshold", cfg.cooccur_threshold}, {"inclusive", cfg.cooccur_inclusive}};
    j["powerlaw"] = {{"k_min", cfg.powerlaw_k_min}};
    j["er_instances"] = cfg.er_instances;
    j["top_n"] = cfg.top_n;
    j["export"] = {{"format", cfg.export_format}, {"partition", cfg.partition_path}};
    return j;
}

namespace pipeline_detail {

inline std::string fnv1a64_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input for checksum: " + path);
    std::uint64_t h = 14695981039346656037ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0') << std::setw(16) << h;
    return os.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path.string());
}

inline void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Wall-clock stage record for the manifest; not part of the determinism
// contract.
class StageClock {
public:
    void begin(std::string name) {
        finish();
        current_ = std::move(name);
        start_ = std::chrono::steady_clock::now();
    }
    void finish() {
        if (current_.empty()) return;
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        const double ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
        stages_.emplace_back(std::move(current_), ms);
        current_.clear();
    }
    const std::string& current() const { return current_; }
    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [name, ms] : stages_) arr.push_back({{"name", name}, {"ms", ms}});
        return arr;
    }

private:
    std::vector<std::pair<std::string, double>> stages_;
    std::string current_;
    std::chrono::steady_clock::time_point start_;
};

struct ManifestContext {
    std::string command;
    nlohmann::json config_echo;
    nlohmann::json inputs = nlohmann::json::array();
    nlohmann::json cleaning; // null until a graph is built
    StageClock clock;
    std::filesystem::path out_dir;

    void add_input(const std::string& path) {
        inputs.push_back({{"path", path},
                          {"bytes", std::filesystem::file_size(path)},
                          {"fnv1a64", fnv1a64_hex(path)}});
    }

    void write(const std::string& status, const std::string& error = {}) {
        nlohmann::json m;
        m["version"] = SMALLWORLD_VERSION;
        m["command"] = command;
        m["config"] = config_echo;
        m["inputs"] = inputs;
        m["cleaning"] = cleaning;
        m["stages"] = clock.to_json();
        m["status"] = status;
        if (status == "failed") {
            m["failure_stage"] = clock.current().empty() ? "finalize" : clock.current();
            m["error"] = error;
        }
        write_json_file(out_dir / "manifest.json", m);
    }
};

// Runs the command body with manifest bracketing: a "running" manifest first,
// then a final one recording success or the failing stage.
template <typename Body>
inline void with_manifest(ManifestContext& ctx, Body&& body) {
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + ctx.out_dir.string());
    ctx.write("running");
    try {
        body();
        ctx.clock.finish();
        ctx.write("ok");
    } catch (const std::exception& e) {
        ctx.write("failed", e.what());
        throw;
    }
}

inline nlohmann::json issues_to_json(const LoadIssues& issues, std::size_t accepted) {
    nlohmann::json rejected = nlohmann::json::array();
    for (const auto& r : issues.rejected)
        rejected.push_back({{"line", r.line}, {"reason", r.reason}});
    return {{"rows_in", issues.rows_in},
            {"accepted", accepted},
            {"rejected_total", issues.rejected_total},
            {"rejected", rejected},
            {"warnings_total", issues.warnings_total},
            {"warnings", issues.warnings}};
}

inline nlohmann::json cleaning_to_json(const CleaningSummary& c) {
    return {{"input_pairs", c.input_pairs},
            {"self_loops_dropped", c.self_loops_dropped},
            {"duplicates_collapsed", c.duplicates_collapsed},
            {"unknown_endpoints_dropped", c.unknown_endpoints_dropped}};
}

} // namespace pipeline_detail

struct LoadedData {
    ArtistCatalog catalog;
    LoadIssues catalog_issues;
    LoadIssues edge_issues;
    std::size_t edge_rows_accepted = 0;
    Graph graph; // full graph over the catalog key universe
    CleaningSummary cleaning;
};

inline LoadedData load_all(const RunConfig& cfg) {
    if (cfg.nodes_path.empty()) throw ConfigError("nodes path not set");
    if (cfg.edges_path.empty()) throw ConfigError("edges path not set");
    LoadedData data;
    auto cat = load_catalog(cfg.nodes_path, cfg.schema);
    data.catalog = std::move(cat.catalog);
    data.catalog_issues = std::move(cat.issues);
    auto edges = load_edges(cfg.edges_path, cfg.schema);
    data.edge_issues = std::move(edges.issues);
    data.edge_rows_accepted = edges.pairs.size();
    auto built = build_graph(edges.pairs, data.catalog.keys());
    data.graph = std::move(built.graph);
    data.cleaning = built.cleaning;
    return data;
}

// Intersection of all active filter sets, or nullopt when no filter is on.
// The top-degree slice is taken on the full graph before intersection.
inline std::optional<NodeSet> filter_node_set(const Graph& g, const ArtistCatalog& catalog,
                                              const Filters& f) {
    if (!f.any()) return std::nullopt;
    std::vector<std::vector<NodeId>> sets;
    if (f.seed_only) sets.push_back(seed_artists(g, catalog).members);
    if (!f.genre.empty()) sets.push_back(genre_nodes(g, catalog, f.genre).members);
    if (!f.country.empty()) sets.push_back(country_chart_nodes(g, catalog, f.country).members);
    if (f.top_fraction) sets.push_back(top_fraction_by_degree(g, *f.top_fraction).members);
    std::vector<NodeId> acc = std::move(sets.front());
    for (std::size_t i = 1; i < sets.size(); ++i) {
        std::vector<NodeId> next;
        std::set_intersection(acc.begin(), acc.end(), sets[i].begin(), sets[i].end(),
                              std::back_inserter(next));
        acc = std::move(next);
    }
    return NodeSet{std::move(acc)};
}

namespace pipeline_detail {

inline nlohmann::json er_report_to_json(const ErReport& er) {
    return {{"seed", er.seed},
            {"p", er.p},
            {"n", er.n},
            {"m", er.m},
            {"avg_local_clustering", er.avg_local_clustering},
            {"transitivity", er.transitivity},
            {"expected_clustering", er.expected_clustering},
            {"diameter", er.diameter},
            {"diameter_on_giant", er.diameter_on_giant},
            {"giant_n", er.giant_n}};
}

// The fixed artifact contract: exactly these keys. Degenerate values (tiny
// graphs, failed fits) surface as nulls rather than as extra keys.
inline nlohmann::json metrics_contract_json(const MetricsReport& r,
                                            const std::optional<PowerLawFit>& fit) {
    nlohmann::json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["density"] = r.density ? nlohmann::json(*r.density) : nlohmann::json(nullptr);
    j["avg_local_clustering"] = r.avg_local_clustering;
    j["transitivity"] = r.transitivity;
    j["diameter"] = r.diameter ? nlohmann::json(*r.diameter) : nlohmann::json(nullptr);
    j["gamma"] = fit ? nlohmann::json(fit->gamma) : nlohmann::json(nullptr);
    j["r_squared"] = fit ? nlohmann::json(fit->r_squared) : nlohmann::json(nullptr);
    return j;
}

inline std::string comparison_report_text(const MetricsReport& t, const ComparisonReport& rep,
                                          const std::optional<PowerLawFit>& fit) {
    std::ostringstream os;
    os << std::left;
    auto num = [](double v) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(6) << v;
        return s.str();
    };
    auto row = [&](const std::string& name, const std::string& a, const std::string& b,
                   const std::string& c) {
        os << "  " << std::setw(22) << name << std::setw(16) << a << std::setw(16) << b
           << std::setw(16) << c << "\n";
    };
    os << "small-world comparison\n";
    os << "======================\n\n";
    row("metric", "network", "random (er)", "ring lattice");
    row("------", "-------", "-----------", "------------");
    row("n", std::to_string(t.n), std::to_string(rep.er.n), std::to_string(rep.lattice.n));
    row("m", std::to_string(t.m), std::to_string(rep.er.m), std::to_string(rep.lattice.m));
    row("avg local clustering", num(t.avg_local_clustering), num(rep.er.avg_local_clustering),
        num(rep.lattice.avg_local_clustering));
    row("transitivity", num(t.transitivity), num(rep.er.transitivity),
        num(rep.lattice.transitivity));
    std::string tdiam = t.diameter ? std::to_string(*t.diameter) : "n/a";
    if (t.diameter_on_giant) tdiam += " (giant)";
    std::string ediam = std::to_string(rep.er.diameter);
    if (rep.er.diameter_on_giant) ediam += " (giant)";
    row("diameter", tdiam, ediam, std::to_string(rep.lattice.diameter_analytic));
    os << "\n";
    os << "  er edge probability     " << format_double(rep.er.p) << "\n";
    os << "  lattice degree k        " << rep.lattice.k << (rep.lattice.k_clamped ? " (clamped)" : "")
       << "\n";
    os << "  clustering vs er        " << num(rep.clustering_ratio_vs_er) << "x\n";
    os << "  lattice diam vs diam    " << num(rep.diameter_ratio_vs_lattice) << "x\n";
    if (fit) {
        os << "  degree power law        gamma " << num(fit->gamma) << ", r^2 "
           << num(fit->r_squared) << " (k >= " << fit->k_min << ", " << fit->points_used
           << " points)\n";
    } else {
        os << "  degree power law        not fit (too few distinct degrees)\n";
    }
    return os.str();
}

// metrics.json, comparison.json, degree histogram, power-law artifacts and a
// readable report for one graph.
inline void write_analysis_bundle(const std::filesystem::path& dir, const Graph& g,
                                  const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());

    MetricsReport metrics = compute_metrics(g);
    auto hist = degree_distribution(g);
    std::optional<PowerLawFit> fit;
    std::string fit_error;
    try {
        fit = fit_power_law(hist, cfg.powerlaw_k_min);
    } catch (const std::invalid_argument& e) {
        fit_error = e.what();
    }

    write_json_file(dir / "metrics.json", metrics_contract_json(metrics, fit));

    ComparisonReport rep = compare_small_world(g, cfg.seed, 10000, &metrics);
    nlohmann::json cmp;
    cmp["target"] = {{"n", metrics.n},
                     {"m", metrics.m},
                     {"density", metrics.density ? nlohmann::json(*metrics.density)
                                                 : nlohmann::json(nullptr)},
                     {"avg_local_clustering", metrics.avg_local_clustering},
                     {"transitivity", metrics.transitivity},
                     {"diameter", metrics.diameter ? nlohmann::json(*metrics.diameter)
                                                   : nlohmann::json(nullptr)},
                     {"diameter_on_giant", metrics.diameter_on_giant},
                     {"giant_n", metrics.giant_n}};
    cmp["er"] = er_report_to_json(rep.er);
    if (cfg.er_instances > 1) {
        nlohmann::json ensemble = nlohmann::json::array();
        double sum_trans = 0.0, sum_diam = 0.0;
        for (std::size_t i = 0; i < cfg.er_instances; ++i) {
            const std::uint64_t s = cfg.seed + i;
            Graph er = matched_er(g, s);
            double trans;
            try {
                trans = transitivity(er);
            } catch (const std::invalid_argument&) {
                trans = 0.0;
            }
            auto labels = connected_components(er);
            bool on_giant = labels.component_count() > 1;
            std::uint32_t diam = diameter_exact(on_giant ? giant_component(er) : er);
            sum_trans += trans;
            sum_diam += diam;
            ensemble.push_back({{"seed", s},
                                {"m", er.edge_count()},
                                {"transitivity", trans},
                                {"diameter", diam},
                                {"diameter_on_giant", on_giant}});
        }
        cmp["er_ensemble"] = {{"instances", ensemble},
                              {"mean_transitivity",
                               sum_trans / static_cast<double>(cfg.er_instances)},
                              {"mean_diameter", sum_diam / static_cast<double>(cfg.er_instances)}};
    }
    cmp["lattice"] = {{"n", rep.lattice.n},
                      {"k", rep.lattice.k},
                      {"k_clamped", rep.lattice.k_clamped},
                      {"m", rep.lattice.m},
                      {"avg_local_clustering", rep.lattice.avg_local_clustering},
                      {"transitivity", rep.lattice.transitivity},
                      {"diameter_analytic", rep.lattice.diameter_analytic},
                      {"diameter_bfs_verified", rep.lattice.diameter_bfs_verified}};
    cmp["ratios"] = {{"clustering_ratio_vs_er", rep.clustering_ratio_vs_er},
                     {"diameter_ratio_vs_lattice", rep.diameter_ratio_vs_lattice}};
    write_json_file(dir / "comparison.json", cmp);

    {
        std::ostringstream os;
        os << "degree,count\n";
        for (const auto& [k, count] : hist) os << k << ',' << count << '\n';
        write_text_file(dir / "degree_histogram.csv", os.str());
    }
    if (fit) {
        write_json_file(dir / "powerlaw.json", {{"gamma", fit->gamma},
                                                {"log_intercept", fit->log_intercept},
                                                {"r_squared", fit->r_squared},
                                                {"k_min", fit->k_min},
                                                {"k_max", fit->k_max},
                                                {"points_used", fit->points_used}});
        std::ostringstream os;
        os << "k,count,ln_k,ln_count\n";
        for (const auto& [k, count] : hist) {
            if (k < fit->k_min || k == 0 || count == 0) continue;
            os << k << ',' << count << ',' << format_double(std::log(static_cast<double>(k)))
               << ',' << format_double(std::log(static_cast<double>(count))) << '\n';
        }
        write_text_file(dir / "powerlaw_points.csv", os.str());
    } else {
        write_json_file(dir / "powerlaw.json", {{"error", fit_error}});
        write_text_file(dir / "powerlaw_points.csv", "k,count,ln_k,ln_count\n");
    }
    write_text_file(dir / "report.txt", comparison_report_text(metrics, rep, fit));
}

} // namespace pipeline_detail

// Full structural analysis: graph summary at the output root, a giant/ bundle
// always, and a filtered/ bundle when any filter is active.
inline void cmd_analyze(const RunConfig& cfg) {
    using namespace pipeline_detail;
    ManifestContext ctx;
    ctx.command = "analyze";
    ctx.config_echo = config_to_json(cfg);
    ctx.out_dir = cfg.out_dir;

    with_manifest(ctx, [&] {
        ctx.clock.begin("load");
        LoadedData data = load_all(cfg);
        ctx.add_input(cfg.nodes_path);
        ctx.add_input(cfg.edges_path);
        ctx.cleaning = cleaning_to_json(data.cleaning);

        ctx.clock.begin("summary");
        const Graph& g = data.graph;
        auto labeling = connected_components(g);
        nlohmann::json summary;
        summary["n"] = g.node_count();
        summary["m"] = g.edge_count();
        summary["catalog"] = issues_to_json(data.catalog_issues, data.catalog.size());
        summary["edge_rows"] = issues_to_json(data.edge_issues, data.edge_rows_accepted);
        summary["cleaning"] = cleaning_to_json(data.cleaning);
        summary["components"] = {
            {"count", labeling.component_count()},
            {"giant_n", labeling.sizes.empty() ? 0 : labeling.sizes[0]},
            {"second_largest_n", labeling.sizes.size() > 1 ? labeling.sizes[1] : 0}};
        std::size_t no_genres = 0;
        for (const auto& r : data.catalog.records())
            if (r.genres.empty()) ++no_genres;
        summary["artists_without_genres"] = no_genres;
        nlohmann::json top_artists = nlohmann::json::array();
        {
            std::vector<NodeId> order(g.node_count());
            std::iota(order.begin(), order.end(), 0u);
            std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
                auto da = g.degree(a), db = g.degree(b);
                if (da != db) return da > db;
                return a < b;
            });
            for (std::size_t i = 0; i < order.size() && i < 20; ++i) {
                const auto* rec = data.catalog.find(g.key_of(order[i]));
                top_artists.push_back({{"key", g.key_of(order[i])},
                                       {"name", rec ? rec->name : ""},
                                       {"degree", g.degree(order[i])}});
            }
        }
        summary["top_degree_artists"] = top_artists;
        write_json_file(ctx.out_dir / "graph_summary.json", summary);

        ctx.clock.begin("giant_analysis");
        Graph giant = giant_component(g);
        write_analysis_bundle(ctx.out_dir / "giant", giant, cfg);

        auto selection = filter_node_set(g, data.catalog, cfg.filters);
        if (selection) {
            ctx.clock.begin("filtered_analysis");
            Graph filtered = induced_subgraph(g, *selection);
            write_analysis_bundle(ctx.out_dir / "filtered", filtered, cfg);
        }
    });
}

// Community detection on the giant component of the (optionally filtered)
// graph. Writes the partition, a summary, and profiles of the largest
// communities.
inline void cmd_louvain(const RunConfig& cfg) {
    using namespace pipeline_detail;
    ManifestContext ctx;
    ctx.command = "louvain";
    ctx.config_echo = config_to_json(cfg);
    ctx.out_dir = cfg.out_dir;

    with_manifest(ctx, [&] {
        ctx.clock.begin("load");
        LoadedData data = load_all(cfg);
        ctx.add_input(cfg.nodes_path);
        ctx.add_input(cfg.edges_path);
        ctx.cleaning = cleaning_to_json(data.cleaning);

        ctx.clock.begin("select");
        Graph working = data.graph;
        auto selection = filter_node_set(data.graph, data.catalog, cfg.filters);
        if (selection) working = induced_subgraph(data.graph, *selection);
        bool on_giant = false;
        auto labeling = connected_components(working);
        if (labeling.component_count() > 1) {
            working = giant_component(working);
            on_giant = true;
        }

        ctx.clock.begin("louvain");
        LouvainConfig lc;
        lc.seed = cfg.seed;
        lc.min_gain = cfg.louvain_min_gain;
        lc.max_passes = cfg.louvain_max_passes;
        Partition part = louvain(working, lc);

        ctx.clock.begin("write");
        {
            std::ostringstream os;
            os << "artist_key,community_id\n";
            for (NodeId v = 0; v < working.node_count(); ++v)
                os << csv_escape(working.key_of(v)) << ',' << part.assignment[v] << '\n';
            write_text_file(ctx.out_dir / "louvain_partition.csv", os.str());
        }

        auto sizes = community_sizes(part);
        nlohmann::json top_sizes = nlohmann::json::array();
        for (std::size_t i = 0; i < sizes.size() && i < cfg.louvain_top_n; ++i)
            top_sizes.push_back(sizes[i]);
        write_json_file(ctx.out_dir / "louvain_summary.json",
                        {{"n", working.node_count()},
                         {"m", working.edge_count()},
                         {"on_giant", on_giant},
                         {"seed", cfg.seed},
                         {"min_gain", cfg.louvain_min_gain},
                         {"max_passes", cfg.louvain_max_passes},
                         {"community_count", part.community_count},
                         {"modularity", part.modularity},
                         {"level_modularity", part.level_modularity},
                         {"top_sizes", top_sizes}});

        nlohmann::json profiles = nlohmann::json::array();
        const std::size_t profile_count = std::min(cfg.louvain_top_n, part.community_count);
        for (std::uint32_t c = 0; c < profile_count; ++c) {
            CommunityProfile prof = community_profile(working, part, c, data.catalog);
            nlohmann::json genres = nlohmann::json::array();
            for (std::size_t i = 0; i < prof.genre_histogram.size() && i < 10; ++i)
                genres.push_back({{"genre", prof.genre_histogram[i].first},
                                  {"count", prof.genre_histogram[i].second}});
            profiles.push_back(
                {{"community_id", prof.community_id},
                 {"n", prof.metrics.n},
                 {"m", prof.metrics.m},
                 {"density", prof.metrics.density ? nlohmann::json(*prof.metrics.density)
                                                  : nlohmann::json(nullptr)},
                 {"avg_local_clustering", prof.metrics.avg_local_clustering},
                 {"transitivity", prof.metrics.transitivity},
                 {"diameter", prof.metrics.diameter ? nlohmann::json(*prof.metrics.diameter)
                                                    : nlohmann::json(nullptr)},
                 {"top_genres", genres}});
        }
        write_json_file(ctx.out_dir / "community_profiles.json", profiles);
    });
}

// Genre co-occurrence over the whole catalog.
inline void cmd_cooccur(const RunConfig& cfg) {
    using namespace pipeline_detail;
    ManifestContext ctx;
    ctx.command = "cooccur";
    ctx.config_echo = config_to_json(cfg);
    ctx.out_dir = cfg.out_dir;

    with_manifest(ctx, [&] {
        if (cfg.nodes_path.empty()) throw ConfigError("nodes path not set");
        ctx.clock.begin("load");
        auto cat = load_catalog(cfg.nodes_path, cfg.schema);
        ctx.add_input(cfg.nodes_path);

        ctx.clock.begin("build");
        CooccurrenceNetwork net =
            build_cooccurrence(cat.catalog, cfg.cooccur_threshold, cfg.cooccur_inclusive);

        ctx.clock.begin("write");
        {
            std::ostringstream os;
            os << "genre_a,genre_b,count\n";
            for (const auto& e : net.edges()) {
                os << csv_escape(e.genre_a) << ',' << csv_escape(e.genre_b) << ',' << e.count
                   << '\n';
            }
            write_text_file(ctx.out_dir / "cooccurrence.csv", os.str());
        }
        nlohmann::json tops = nlohmann::json::array();
        for (const auto& [genre, deg] : net.top_genres_by_degree(cfg.top_n))
            tops.push_back({{"genre", genre}, {"degree", deg}});
        write_json_file(ctx.out_dir / "top_genres.json",
                        {{"tag_count", net.tag_count()},
                         {"distinct_pairs", net.distinct_pairs()},
                         {"total_pair_count", net.total_pair_count()},
                         {"retained_edges", net.retained_edge_count()},
                         {"threshold", net.threshold()},
                         {"threshold_inclusive", net.threshold_inclusive()},
                         {"top_genres_by_degree", tops}});
    });
}

// Clean edge list (and node table) of the filtered graph, for external tools.
inline void cmd_export(const RunConfig& cfg) {
    using namespace pipeline_detail;
    ManifestContext ctx;
    ctx.command = "export";
    ctx.config_echo = config_to_json(cfg);
    ctx.out_dir = cfg.out_dir;

    if (cfg.export_format != "edgelist-csv" && cfg.export_format != "json")
        throw ConfigError("unknown export format '" + cfg.export_format +
                          "' (expected edgelist-csv or json)");

    with_manifest(ctx, [&] {
        ctx.clock.begin("load");
        LoadedData data = load_all(cfg);
        ctx.add_input(cfg.nodes_path);
        ctx.add_input(cfg.edges_path);
        ctx.cleaning = cleaning_to_json(data.cleaning);

        ctx.clock.begin("select");
        Graph working = data.graph;
        auto selection = filter_node_set(data.graph, data.catalog, cfg.filters);
        if (selection) working = induced_subgraph(data.graph, *selection);

        std::unordered_map<std::string, std::string> community;
        if (!cfg.partition_path.empty()) {
            CsvTable t = read_csv(cfg.partition_path);
            ctx.add_input(cfg.partition_path);
            if (!t.has_column("artist_key") || !t.has_column("community_id"))
                throw ConfigError("partition file needs artist_key and community_id columns");
            auto ki = t.column_index("artist_key");
            auto ci = t.column_index("community_id");
            for (const auto& row : t.rows)
                if (row.size() == t.header.size()) community[row[ki]] = row[ci];
        }

        ctx.clock.begin("write");
        if (cfg.export_format == "edgelist-csv") {
            std::ostringstream es;
            es << "source,target\n";
            for (NodeId u = 0; u < working.node_count(); ++u)
                for (NodeId v : working.neighbors(u))
                    if (v > u)
                        es << csv_escape(working.key_of(u)) << ',' << csv_escape(working.key_of(v))
                           << '\n';
            write_text_file(ctx.out_dir / "export_edges.csv", es.str());

            std::ostringstream ns;
            ns << (community.empty() ? "artist_key\n" : "artist_key,community_id\n");
            for (NodeId v = 0; v < working.node_count(); ++v) {
                ns << csv_escape(working.key_of(v));
                if (!community.empty()) {
                    auto it = community.find(working.key_of(v));
                    ns << ',' << (it == community.end() ? "" : it->second);
                }
                ns << '\n';
            }
            write_text_file(ctx.out_dir / "export_nodes.csv", ns.str());
        } else {
            nlohmann::json nodes = nlohmann::json::array();
            for (NodeId v = 0; v < working.node_count(); ++v) {
                nlohmann::json node = {{"key", working.key_of(v)}};
                if (!community.empty()) {
                    auto it = community.find(working.key_of(v));
                    node["community_id"] =
                        it == community.end() ? nlohmann::json(nullptr) : nlohmann::json(it->second);
                }
                nodes.push_back(node);
            }
            nlohmann::json edges = nlohmann::json::array();
            for (NodeId u = 0; u < working.node_count(); ++u)
                for (NodeId v : working.neighbors(u))
                    if (v > u) edges.push_back({u, v});
            write_json_file(ctx.out_dir / "export_graph.json",
                            {{"n", working.node_count()},
                             {"m", working.edge_count()},
                             {"nodes", nodes},
                             {"edges", edges}});
        }
    });
}

// Genre histogram, over the filtered graph's artists when filters are active,
// otherwise over the whole catalog.
inline void cmd_genres(const RunConfig& cfg) {
    using namespace pipeline_detail;
    ManifestContext ctx;
    ctx.command = "genres";
    ctx.config_echo = config_to_json(cfg);
    ctx.out_dir = cfg.out_dir;

    with_manifest(ctx, [&] {
        if (cfg.nodes_path.empty()) throw ConfigError("nodes path not set");
        ctx.clock.begin("load");
        std::vector<std::pair<std::string, std::size_t>> hist;
        if (cfg.filters.any()) {
            LoadedData data = load_all(cfg);
            ctx.add_input(cfg.nodes_path);
            ctx.add_input(cfg.edges_path);
            ctx.cleaning = cleaning_to_json(data.cleaning);
            ctx.clock.begin("select");
            auto selection = filter_node_set(data.graph, data.catalog, cfg.filters);
            Graph working = induced_subgraph(data.graph, *selection);
            hist = genre_histogram(working, data.catalog, cfg.top_n);
        } else {
            auto cat = load_catalog(cfg.nodes_path, cfg.schema);
            ctx.add_input(cfg.nodes_path);
            hist = genre_histogram(cat.catalog, cfg.top_n);
        }

        ctx.clock.begin("write");
        std::ostringstream os;
        os << "genre,count\n";
        for (const auto& [genre, count] : hist)
            os << csv_escape(genre) << ',' << count << '\n';
        write_text_file(ctx.out_dir / "genre_histogram.csv", os.str());
    });
}

} // namespace smallworld
