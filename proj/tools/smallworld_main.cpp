#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "smallworld/pipeline.hpp"

// Command line front end. Config file first, then SMALLWORLD_OUT for the
// output directory, then explicit flags; later layers win.
//
// Exit codes: 0 success, 2 configuration or usage problem, 3 I/O problem,
// 4 analysis failure (bad graph shape, undefined metric, empty selection).

namespace {

struct CliOverrides {
    std::string config_path;
    std::optional<std::string> nodes, edges, out;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> genre, country;
    std::optional<double> top_fraction;
    std::optional<std::size_t> kmin, top_n, er_instances;
    std::optional<std::uint64_t> threshold;
    std::optional<std::string> format, partition;
    bool seed_only = false;
    bool inclusive = false;
};

void add_common_options(CLI::App* sub, CliOverrides& o) {
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--nodes", o.nodes, "artist table CSV");
    sub->add_option("--edges", o.edges, "collaboration edge list CSV");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--seed", o.seed, "random seed recorded in artifacts");
    sub->add_flag("--seed-only", o.seed_only, "keep only artists with a chart hit");
    sub->add_option("--genre", o.genre, "keep only artists with this genre");
    sub->add_option("--country", o.country, "keep only artists that charted in this country code");
    sub->add_option("--top-fraction", o.top_fraction,
                    "keep only this fraction of highest-degree artists (0, 1]");
    sub->add_option("--top-n", o.top_n, "listing length for rankings");
}

smallworld::RunConfig resolve_config(const CliOverrides& o, const CLI::App* sub) {
    smallworld::RunConfig cfg;
    if (!o.config_path.empty()) cfg = smallworld::load_run_config(o.config_path);
    if (const char* env_out = std::getenv("SMALLWORLD_OUT")) cfg.out_dir = env_out;

    if (o.nodes) cfg.nodes_path = *o.nodes;
    if (o.edges) cfg.edges_path = *o.edges;
    if (o.out) cfg.out_dir = *o.out;
    if (o.seed) cfg.seed = *o.seed;
    if (auto* flag = sub->get_option_no_throw("--seed-only"); flag && flag->count())
        cfg.filters.seed_only = true;
    if (o.genre) cfg.filters.genre = *o.genre;
    if (o.country) cfg.filters.country = *o.country;
    if (o.top_fraction) {
        if (!(*o.top_fraction > 0.0) || *o.top_fraction > 1.0)
            throw smallworld::ConfigError("--top-fraction must be in (0, 1]");
        cfg.filters.top_fraction = *o.top_fraction;
    }
    if (o.top_n) cfg.top_n = *o.top_n;
    if (o.kmin) {
        if (*o.kmin == 0) throw smallworld::ConfigError("--kmin must be positive");
        cfg.powerlaw_k_min = *o.kmin;
    }
    if (o.er_instances) {
        if (*o.er_instances == 0) throw smallworld::ConfigError("--er-instances must be positive");
        cfg.er_instances = *o.er_instances;
    }
    if (o.threshold) cfg.cooccur_threshold = *o.threshold;
    if (auto* flag = sub->get_option_no_throw("--inclusive"); flag && flag->count())
        cfg.cooccur_inclusive = true;
    if (o.format) cfg.export_format = *o.format;
    if (o.partition) cfg.partition_path = *o.partition;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"small-world analysis of artist collaboration networks"};
    app.require_subcommand(1);

    CliOverrides o;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "metrics, baselines and degree distribution for the graph");
    add_common_options(analyze, o);
    analyze->add_option("--kmin", o.kmin, "smallest degree used in the power-law fit");
    analyze->add_option("--er-instances", o.er_instances,
                        "number of random-graph instances for the comparison ensemble");

    CLI::App* louvain = app.add_subcommand("louvain", "community detection");
    add_common_options(louvain, o);

    CLI::App* cooccur = app.add_subcommand("cooccur", "genre co-occurrence network");
    add_common_options(cooccur, o);
    cooccur->add_option("--threshold", o.threshold, "minimum shared-artist count for an edge");
    cooccur->add_flag("--inclusive", o.inclusive, "retain edges meeting the threshold exactly");

    CLI::App* exportc = app.add_subcommand("export", "write the cleaned graph for external tools");
    add_common_options(exportc, o);
    exportc->add_option("--format", o.format, "edgelist-csv or json");
    exportc->add_option("--partition", o.partition, "partition CSV to join as a community column");

    CLI::App* genres = app.add_subcommand("genres", "genre frequency histogram");
    add_common_options(genres, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) {
            smallworld::cmd_analyze(resolve_config(o, analyze));
        } else if (app.got_subcommand(louvain)) {
            smallworld::cmd_louvain(resolve_config(o, louvain));
        } else if (app.got_subcommand(cooccur)) {
            smallworld::cmd_cooccur(resolve_config(o, cooccur));
        } else if (app.got_subcommand(exportc)) {
            smallworld::cmd_export(resolve_config(o, exportc));
        } else if (app.got_subcommand(genres)) {
            smallworld::cmd_genres(resolve_config(o, genres));
        }
        return 0;
    } catch (const smallworld::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const smallworld::SchemaError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const smallworld::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return 4;
    } catch (const std::runtime_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
