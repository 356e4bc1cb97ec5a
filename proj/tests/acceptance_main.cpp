// Acceptance gate. Prints one line per criterion and exits nonzero if any
// executed criterion fails.
//
// Criteria 1-7 are self-contained property checks against independent oracles
// and the bundled fixture. Criteria 8-15 need the real collaboration dataset:
// point SMALLWORLD_DATASET_DIR at a directory holding nodes.csv and edges.csv
// (the Kaggle Spotify artist collaboration network export); without it those
// criteria are reported as skipped.

#include <smallworld/pipeline.hpp>

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace smallworld;

namespace {

int g_pass = 0;
int g_fail = 0;
int g_skip = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << detail
              << std::endl;
    ++(ok ? g_pass : g_fail);
}

void skip(int criterion, const std::string& reason) {
    std::cout << "[SKIP] criterion " << criterion << ": " << reason << std::endl;
    ++g_skip;
}

void info(const std::string& msg) { std::cout << "[INFO] " << msg << std::endl; }

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- criterion 1

void criterion_diameter_vs_oracle() {
    std::mt19937 rng(101);
    int checked = 0;
    std::string detail;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + rng() % 499;
        const std::size_t extra = rng() % (2 * n);
        Graph g = oracle::random_connected_graph(rng, n, extra);
        const auto want = oracle::diameter(g);
        const std::uint32_t got = diameter_exact(g);
        if (!want || got != *want) {
            detail = "mismatch on graph " + std::to_string(i) + " (n=" + std::to_string(n) +
                     "): got " + std::to_string(got);
            break;
        }
        ++checked;
    }
    report(1, checked == 200,
           checked == 200 ? "exact diameter equals all-pairs BFS on 200 random connected graphs"
                          : detail);
}

// ---------------------------------------------------------------- criterion 2

void criterion_lattice_formula() {
    std::string detail;
    int checked = 0;
    for (std::size_t n = 5; n <= 400 && detail.empty(); ++n) {
        for (std::size_t k = 2; k <= 10 && k < n; k += 2) {
            Graph g = ring_lattice(n, k);
            const auto want = oracle::diameter(g);
            const std::uint32_t got = lattice_diameter_analytic(n, k);
            if (!want || got != *want) {
                detail = "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                         ": formula " + std::to_string(got) + ", BFS " +
                         (want ? std::to_string(*want) : std::string("n/a"));
                break;
            }
            ++checked;
        }
    }
    report(2, detail.empty(),
           detail.empty() ? "ring lattice formula equals BFS diameter for all n in [5,400], even "
                            "k in [2,10] (" +
                                std::to_string(checked) + " lattices)"
                          : detail);
}

// ---------------------------------------------------------------- criterion 3

void criterion_clustering_vs_oracle() {
    std::mt19937 rng(303);
    const double ps[] = {0.02, 0.05, 0.1, 0.2, 0.4};
    int checked = 0;
    std::string detail;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + rng() % 99;
        Graph g = oracle::random_gnp(rng, n, ps[i % 5]);
        const double avg_got = avg_local_clustering(g);
        const double avg_want = oracle::avg_local_clustering(g);
        if (std::abs(avg_got - avg_want) >= 1e-12) {
            detail = "avg local clustering off by " + fmt(std::abs(avg_got - avg_want), 16);
            break;
        }
        const auto trans_want = oracle::transitivity(g);
        if (trans_want) {
            const double trans_got = transitivity(g);
            if (std::abs(trans_got - *trans_want) >= 1e-12) {
                detail = "transitivity off by " + fmt(std::abs(trans_got - *trans_want), 16);
                break;
            }
        } else {
            bool threw = false;
            try {
                (void)transitivity(g);
            } catch (const std::invalid_argument&) {
                threw = true;
            }
            if (!threw) {
                detail = "transitivity defined where the oracle sees no connected triples";
                break;
            }
        }
        ++checked;
    }
    report(3, checked == 100,
           checked == 100
               ? "both clustering definitions match the matrix oracle on 100 random graphs"
               : detail);
}

// ---------------------------------------------------------------- criterion 4

void criterion_powerlaw_recovery() {
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t k = 1; k <= 50; ++k)
        hist[k] = static_cast<std::size_t>(std::llround(1e8 * std::pow(double(k), -2.0)));
    const PowerLawFit fit = fit_power_law(hist, 1);
    const bool ok = std::abs(fit.gamma - 2.0) < 1e-2 && fit.r_squared > 0.999;
    report(4, ok,
           "synthetic k^-2 histogram: gamma " + fmt(fit.gamma) + " (want 2.0 +/- 0.01), r^2 " +
               fmt(fit.r_squared, 6) + " (want > 0.999)");
}

// ---------------------------------------------------------------- criterion 5

void criterion_er_moments() {
    const std::size_t n = 2000;
    const double p = 0.01;
    const int instances = 30;
    std::vector<double> edge_counts, clusterings;
    for (int s = 1; s <= instances; ++s) {
        Rng rng(static_cast<std::uint64_t>(s));
        Graph g = erdos_renyi(n, p, rng);
        edge_counts.push_back(static_cast<double>(g.edge_count()));
        clusterings.push_back(avg_local_clustering(g));
    }
    auto mean = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto sample_sd = [&](const std::vector<double>& v, double m) {
        double s = 0;
        for (double x : v) s += (x - m) * (x - m);
        return std::sqrt(s / static_cast<double>(v.size() - 1));
    };
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    const double mu_edges = pairs * p;
    const double sigma_edges = std::sqrt(pairs * p * (1 - p));
    const double mean_edges = mean(edge_counts);
    const double tol_edges = 3.0 * sigma_edges / std::sqrt(double(instances));
    const bool edges_ok = std::abs(mean_edges - mu_edges) <= tol_edges;

    const double mean_clust = mean(clusterings);
    const double tol_clust = 3.0 * sample_sd(clusterings, mean_clust) / std::sqrt(double(instances));
    const bool clust_ok = std::abs(mean_clust - p) <= tol_clust;

    report(5, edges_ok && clust_ok,
           "G(2000, 0.01) over 30 seeds: mean edges " + fmt(mean_edges, 1) + " (want " +
               fmt(mu_edges, 1) + " +/- " + fmt(tol_edges, 1) + "), mean clustering " +
               fmt(mean_clust, 6) + " (want 0.01 +/- " + fmt(tol_clust, 6) + ")");
}

// ---------------------------------------------------------------- criterion 6

void criterion_louvain_quality() {
    std::mt19937 rng(606);
    std::string detail;
    for (int i = 0; i < 50 && detail.empty(); ++i) {
        const std::size_t n = 3 + rng() % 6;
        Graph g = oracle::random_connected_graph(rng, n, rng() % n);
        const Partition part = louvain(g);
        const oracle::BestPartition best = oracle::max_modularity(g);
        if (part.modularity < 0.95 * best.q - 1e-12)
            detail = "graph " + std::to_string(i) + ": modularity " + fmt(part.modularity, 6) +
                     " below 0.95 x optimum " + fmt(best.q, 6);
        for (std::size_t l = 1; l < part.level_modularity.size(); ++l)
            if (part.level_modularity[l] < part.level_modularity[l - 1] - 1e-12)
                detail = "level modularity not monotone on graph " + std::to_string(i);
    }

    // Two cliques joined by one edge: the planted split must be found exactly.
    if (detail.empty()) {
        oracle::EdgeVec edges;
        for (NodeId u = 0; u < 5; ++u)
            for (NodeId v = u + 1; v < 5; ++v) {
                edges.emplace_back(u, v);
                edges.emplace_back(u + 5, v + 5);
            }
        edges.emplace_back(4, 5);
        Graph g = oracle::make_graph(10, edges);
        const Partition part = louvain(g);
        bool split = part.community_count == 2;
        for (NodeId v = 0; v < 10 && split; ++v) split = part.assignment[v] == (v < 5 ? 0u : 1u);
        if (!split || std::abs(part.modularity - 19.0 / 42.0) >= 1e-12)
            detail = "two-clique graph not split cleanly (Q " + fmt(part.modularity, 6) + ")";
    }

    report(6, detail.empty(),
           detail.empty() ? "community quality >= 0.95 x brute-force optimum on 50 graphs, "
                            "planted two-clique split recovered exactly"
                          : detail);
}

// ---------------------------------------------------------------- criterion 7

void criterion_determinism() {
    const std::string data_dir = SMALLWORLD_TEST_DATA_DIR;
    oracle::TempDir tmp;
    auto run = [&](const std::string& name) {
        RunConfig cfg;
        cfg.nodes_path = data_dir + "/nodes.csv";
        cfg.edges_path = data_dir + "/edges.csv";
        cfg.out_dir = tmp.str(name);
        cfg.seed = 42;
        cfg.er_instances = 2;
        cmd_analyze(cfg);
        cmd_louvain(cfg);
        cmd_cooccur(cfg);
        return std::filesystem::path(cfg.out_dir);
    };
    const auto a = run("a");
    const auto b = run("b");

    auto names = [](const std::filesystem::path& dir) {
        std::set<std::string> out;
        for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
            if (e.is_regular_file())
                out.insert(std::filesystem::relative(e.path(), dir).string());
        return out;
    };
    std::string detail;
    const auto names_a = names(a);
    if (names_a != names(b)) detail = "artifact sets differ between runs";
    for (const auto& name : names_a) {
        if (!detail.empty()) break;
        if (name == "manifest.json") continue;
        if (oracle::read_file(a / name) != oracle::read_file(b / name))
            detail = name + " differs between identical runs";
    }
    if (detail.empty()) {
        auto load = [](const std::filesystem::path& p) {
            std::ifstream in(p);
            return nlohmann::json::parse(in);
        };
        auto ma = load(a / "manifest.json");
        auto mb = load(b / "manifest.json");
        ma.erase("stages");
        mb.erase("stages");
        ma["config"].erase("out");
        mb["config"].erase("out");
        if (ma != mb) detail = "manifests differ beyond stage timings";
    }
    report(7, detail.empty(),
           detail.empty() ? "repeated fixed-seed runs are byte-identical apart from timings"
                          : detail);
}

// ------------------------------------------------------------ dataset loading

struct Dataset {
    ArtistCatalog catalog;
    LoadIssues node_issues, edge_issues;
    CleaningSummary cleaning;
    std::size_t pairs_accepted = 0;
    Graph full, giant, chart;
    Graph us, uk, brazil, sa, india, japan;
    std::string uk_code, sa_code;
    Graph rap, dance_pop, tropical;
};

Graph country_graph(const Graph& full, const ArtistCatalog& catalog,
                    std::initializer_list<const char*> codes, std::size_t want_n,
                    std::string& used) {
    for (const char* c : codes) {
        auto ns = country_chart_nodes(full, catalog, c);
        if (ns.members.size() == want_n) {
            used = c;
            return induced_subgraph(full, ns);
        }
    }
    for (const char* c : codes) {
        auto ns = country_chart_nodes(full, catalog, c);
        if (!ns.members.empty()) {
            used = c;
            return induced_subgraph(full, ns);
        }
    }
    throw std::runtime_error(std::string("no artists charted in '") + *codes.begin() + "'");
}

Graph genre_seed_graph(const Graph& full, const ArtistCatalog& catalog, const std::string& genre) {
    Filters f;
    f.seed_only = true;
    f.genre = genre;
    auto sel = filter_node_set(full, catalog, f);
    return induced_subgraph(full, *sel);
}

Dataset load_dataset(const std::string& dir) {
    Dataset ds;
    SchemaConfig schema;
    auto cat = load_catalog(dir + "/nodes.csv", schema);
    ds.catalog = std::move(cat.catalog);
    ds.node_issues = std::move(cat.issues);
    auto edges = load_edges(dir + "/edges.csv", schema);
    ds.edge_issues = std::move(edges.issues);
    ds.pairs_accepted = edges.pairs.size();
    auto built = build_graph(edges.pairs, ds.catalog.keys());
    ds.full = std::move(built.graph);
    ds.cleaning = built.cleaning;
    ds.giant = giant_component(ds.full);
    ds.chart = induced_subgraph(ds.full, seed_artists(ds.full, ds.catalog));
    std::string code;
    ds.us = country_graph(ds.full, ds.catalog, {"us"}, 1185, code);
    ds.uk = country_graph(ds.full, ds.catalog, {"gb", "uk"}, 1282, ds.uk_code);
    ds.brazil = country_graph(ds.full, ds.catalog, {"br"}, 1081, code);
    ds.sa = country_graph(ds.full, ds.catalog, {"za", "sa"}, 746, ds.sa_code);
    ds.india = country_graph(ds.full, ds.catalog, {"in"}, 617, code);
    ds.japan = country_graph(ds.full, ds.catalog, {"jp"}, 677, code);
    ds.rap = genre_seed_graph(ds.full, ds.catalog, "rap");
    ds.dance_pop = genre_seed_graph(ds.full, ds.catalog, "dance pop");
    ds.tropical = genre_seed_graph(ds.full, ds.catalog, "tropical house");
    return ds;
}

// Diameter of the graph, falling back to its giant component when
// disconnected. Matches how the reported values were measured.
std::uint32_t subgraph_diameter(const Graph& g) {
    auto labels = connected_components(g);
    if (labels.component_count() <= 1) return diameter_exact(g);
    return diameter_exact(giant_component(g));
}

// ---------------------------------------------------------------- criterion 8

void criterion_exact_counts(const Dataset& ds) {
    std::ostringstream bad;
    auto want = [&](const char* name, std::size_t got, std::size_t expect) {
        if (got != expect) bad << name << "=" << got << " (want " << expect << ") ";
    };
    want("full_n", ds.full.node_count(), 156326);
    want("giant_n", ds.giant.node_count(), 148386);
    want("chart_n", ds.chart.node_count(), 19562);
    want("us_n", ds.us.node_count(), 1185);
    want("us_m", ds.us.edge_count(), 8507);
    want("uk_n", ds.uk.node_count(), 1282);
    want("uk_m", ds.uk.edge_count(), 8131);
    want("brazil_n", ds.brazil.node_count(), 1081);
    want("brazil_m", ds.brazil.edge_count(), 6395);
    want("sa_n", ds.sa.node_count(), 746);
    want("sa_m", ds.sa.edge_count(), 4360);
    want("india_n", ds.india.node_count(), 617);
    want("india_m", ds.india.edge_count(), 3019);
    want("japan_n", ds.japan.node_count(), 677);
    want("japan_m", ds.japan.edge_count(), 1851);
    want("edge_rows", ds.edge_issues.rows_in, 300386);
    const std::string errors = bad.str();
    std::ostringstream cleaning;
    cleaning << "cleaning: pairs " << ds.cleaning.input_pairs << ", loops dropped "
             << ds.cleaning.self_loops_dropped << ", duplicates "
             << ds.cleaning.duplicates_collapsed << ", unknown endpoints "
             << ds.cleaning.unknown_endpoints_dropped << "; uk code '" << ds.uk_code
             << "', sa code '" << ds.sa_code << "'";
    report(8, errors.empty(),
           (errors.empty() ? "node, edge and subgraph counts all exact; " : errors + "; ") +
               cleaning.str());
}

// ---------------------------------------------------------------- criterion 9

void criterion_exact_diameters(const Dataset& ds) {
    Timer giant_timer;
    const std::uint32_t giant_diam = diameter_exact(ds.giant);
    const double giant_seconds = giant_timer.seconds();
    info("giant diameter computed in " + fmt(giant_seconds, 1) + "s (budget 900s)");

    std::ostringstream bad;
    auto want = [&](const char* name, std::uint32_t got, std::uint32_t expect) {
        if (got != expect) bad << name << "=" << got << " (want " << expect << ") ";
    };
    want("giant", giant_diam, 24);
    want("chart", subgraph_diameter(ds.chart), 18);
    want("us", subgraph_diameter(ds.us), 8);
    want("uk", subgraph_diameter(ds.uk), 8);
    want("brazil", subgraph_diameter(ds.brazil), 8);
    want("sa", subgraph_diameter(ds.sa), 13);
    want("india", subgraph_diameter(ds.india), 9);
    want("japan", subgraph_diameter(ds.japan), 12);
    want("rap", subgraph_diameter(ds.rap), 5);
    want("dance_pop", subgraph_diameter(ds.dance_pop), 6);
    const std::string errors = bad.str();
    report(9, errors.empty(),
           errors.empty() ? "all ten exact diameters match, giant in " + fmt(giant_seconds, 1) + "s"
                          : errors);
}

// --------------------------------------------------------------- criterion 10

void criterion_clustering_values(const Dataset& ds) {
    struct Case {
        const char* name;
        const Graph* g;
        double expect;
    };
    const Case cases[] = {
        {"giant", &ds.giant, 0.085},     {"chart", &ds.chart, 0.121},
        {"us", &ds.us, 0.17188},         {"uk", &ds.uk, 0.145},
        {"brazil", &ds.brazil, 0.188},   {"sa", &ds.sa, 0.206},
        {"india", &ds.india, 0.203},     {"japan", &ds.japan, 0.104},
        {"rap", &ds.rap, 0.377},         {"dance_pop", &ds.dance_pop, 0.192},
        {"tropical", &ds.tropical, 0.155}};

    std::ostringstream avg_bad, trans_bad;
    int avg_hits = 0, trans_hits = 0;
    for (const Case& c : cases) {
        const double avg = avg_local_clustering(*c.g);
        double trans = 0.0;
        try {
            trans = transitivity(*c.g);
        } catch (const std::invalid_argument&) {
        }
        if (std::abs(avg - c.expect) <= 0.005)
            ++avg_hits;
        else
            avg_bad << c.name << "=" << fmt(avg) << " ";
        if (std::abs(trans - c.expect) <= 0.005)
            ++trans_hits;
        else
            trans_bad << c.name << "=" << fmt(trans) << " ";
    }
    const int total = 11;
    if (trans_hits == total) {
        report(10, true, "transitivity matches all 11 reference clusterings within 0.005");
    } else if (avg_hits == total) {
        report(10, true,
               "average local clustering matches all 11 reference clusterings within 0.005");
    } else {
        report(10, false,
               "no single definition matches all values; transitivity misses: " + trans_bad.str() +
                   "| avg local misses: " + avg_bad.str());
    }
}

// --------------------------------------------------------------- criterion 11

void criterion_chart_powerlaw(const Dataset& ds) {
    const PowerLawFit fit = fit_power_law(degree_distribution(ds.chart), 1);
    const bool ok = std::abs(fit.gamma - 2.0216) <= 0.05 && std::abs(fit.r_squared - 0.9282) <= 0.02;
    report(11, ok,
           "chart degree fit: gamma " + fmt(fit.gamma) + " (want 2.0216 +/- 0.05), r^2 " +
               fmt(fit.r_squared) + " (want 0.9282 +/- 0.02)");
}

// --------------------------------------------------------------- criterion 12

void criterion_baseline_diameters(const Dataset& ds) {
    std::ostringstream bad;
    auto lattice = [](const Graph& g) {
        const std::size_t k = lattice_k_for_density(g.node_count(), density(g));
        return lattice_diameter_analytic(g.node_count(), k);
    };
    auto want_lattice = [&](const char* name, const Graph& g, std::uint32_t expect) {
        const std::uint32_t got = lattice(g);
        if (got != expect) bad << "lattice_" << name << "=" << got << " (want " << expect << ") ";
    };
    want_lattice("giant", ds.giant, 37097);
    want_lattice("chart", ds.chart, 2446);
    want_lattice("us", ds.us, 85);
    want_lattice("uk", ds.uk, 107);
    want_lattice("brazil", ds.brazil, 91);
    want_lattice("india", ds.india, 62);
    want_lattice("japan", ds.japan, 113);

    auto want_er = [&](const char* name, const Graph& g, std::uint32_t expect) {
        Graph er = matched_er(g, 42);
        const std::uint32_t got = subgraph_diameter(er);
        if (got + 2 < expect || got > expect + 2)
            bad << "er_" << name << "=" << got << " (want " << expect << " +/- 2) ";
    };
    want_er("giant", ds.giant, 20);
    want_er("chart", ds.chart, 9);
    want_er("us", ds.us, 5);
    want_er("uk", ds.uk, 5);
    want_er("sa", ds.sa, 5);
    want_er("india", ds.india, 5);
    want_er("japan", ds.japan, 8);
    want_er("rap", ds.rap, 3);

    const std::string errors = bad.str();
    report(12, errors.empty(),
           errors.empty() ? "matched lattice diameters exact and random-baseline diameters within 2"
                          : errors);
}

// --------------------------------------------------------------- criterion 13

void criterion_chart_communities(const Dataset& ds) {
    LouvainConfig lc;
    lc.seed = 42;
    const Partition part = louvain(ds.chart, lc);
    const auto sizes = community_sizes(part);
    std::ostringstream bad;
    if (!(part.modularity > 0.75))
        bad << "modularity " << fmt(part.modularity) << " (want > 0.75) ";
    auto within = [](double got, double center, double frac) {
        return std::abs(got - center) <= frac * center;
    };
    if (!within(double(part.community_count), 5907.0, 0.15))
        bad << "communities " << part.community_count << " (want 5907 +/- 15%) ";
    const std::size_t top_want[3] = {1928, 1604, 1165};
    for (int i = 0; i < 3; ++i) {
        const std::size_t got = i < int(sizes.size()) ? sizes[i] : 0;
        if (!within(double(got), double(top_want[i]), 0.10))
            bad << "top" << (i + 1) << " size " << got << " (want " << top_want[i]
                << " +/- 10%) ";
    }
    const std::string errors = bad.str();
    std::ostringstream summary;
    summary << "Q " << fmt(part.modularity) << ", " << part.community_count << " communities, top "
            << (sizes.size() > 0 ? sizes[0] : 0) << "/" << (sizes.size() > 1 ? sizes[1] : 0) << "/"
            << (sizes.size() > 2 ? sizes[2] : 0);
    report(13, errors.empty(), errors.empty() ? summary.str() : errors + "| " + summary.str());
}

// --------------------------------------------------------------- criterion 14

void criterion_cooccurrence_counts(const Dataset& ds) {
    const CooccurrenceNetwork net = build_cooccurrence(ds.catalog, 5);
    std::ostringstream bad;
    auto want = [&](const char* a, const char* b, std::uint64_t expect) {
        const std::uint64_t got = net.raw_count(a, b);
        if (got != expect)
            bad << "(" << a << ", " << b << ")=" << got << " (want " << expect << ") ";
    };
    want("dance pop", "pop", 236);
    want("dance pop", "post-teen pop", 129);
    want("edm", "electro house", 302);
    const std::string errors = bad.str();
    report(14, errors.empty(),
           errors.empty() ? "genre pair counts exact for the three reference pairs" : errors);
}

// --------------------------------------------------------------- criterion 15

void criterion_hub_degrees(const Dataset& ds) {
    NodeId hub = 0;
    for (NodeId v = 1; v < ds.full.node_count(); ++v)
        if (ds.full.degree(v) > ds.full.degree(hub)) hub = v;
    const auto* rec = ds.catalog.find(ds.full.key_of(hub));
    const std::string hub_name = rec ? rec->name : "";
    const bool hub_ok = hub_name == "Steve Aoki" && ds.full.degree(hub) == 498;

    // "Chart toppers with more than 200 collaborations" admits two readings:
    // degree inside the chart subgraph, or full-network degree of chart
    // artists. Either count matching is accepted; both are printed.
    std::size_t chart_internal = 0;
    for (NodeId v = 0; v < ds.chart.node_count(); ++v)
        if (ds.chart.degree(v) > 200) ++chart_internal;
    std::size_t chart_full = 0;
    for (NodeId v = 0; v < ds.chart.node_count(); ++v) {
        const auto in_full = ds.full.node_by_key(ds.chart.key_of(v));
        if (in_full && ds.full.degree(*in_full) > 200) ++chart_full;
    }
    const bool count_ok = chart_internal == 83 || chart_full == 83;

    report(15, hub_ok && count_ok,
           "max-degree artist '" + hub_name + "' degree " +
               std::to_string(ds.full.degree(hub)) + " (want Steve Aoki, 498); chart nodes with "
               "degree > 200: " +
               std::to_string(chart_internal) + " by chart-subgraph degree, " +
               std::to_string(chart_full) + " by full-network degree (want 83 for either)");
}

} // namespace

int main() {
    Timer total;
    criterion_diameter_vs_oracle();
    criterion_lattice_formula();
    criterion_clustering_vs_oracle();
    criterion_powerlaw_recovery();
    criterion_er_moments();
    criterion_louvain_quality();
    criterion_determinism();
    info("property criteria finished in " + fmt(total.seconds(), 1) + "s (budget 60s)");

    const char* dataset_dir = std::getenv("SMALLWORLD_DATASET_DIR");
    if (!dataset_dir || !*dataset_dir) {
        for (int c = 8; c <= 15; ++c) skip(c, "SMALLWORLD_DATASET_DIR not set");
    } else {
        try {
            Timer load_timer;
            const Dataset ds = load_dataset(dataset_dir);
            info("dataset loaded in " + fmt(load_timer.seconds(), 1) + "s");
            Timer suite;
            criterion_exact_counts(ds);
            Timer diam_timer;
            criterion_exact_diameters(ds);
            const double diam_seconds = diam_timer.seconds();
            criterion_clustering_values(ds);
            criterion_chart_powerlaw(ds);
            criterion_baseline_diameters(ds);
            criterion_chart_communities(ds);
            criterion_cooccurrence_counts(ds);
            criterion_hub_degrees(ds);
            info("dataset criteria finished in " + fmt(suite.seconds(), 1) +
                 "s; excluding diameters " + fmt(suite.seconds() - diam_seconds, 1) +
                 "s (budget 300s)");
        } catch (const std::exception& e) {
            report(8, false, std::string("dataset failed to load: ") + e.what());
            for (int c = 9; c <= 15; ++c) skip(c, "dataset unavailable");
        }
    }

    std::cout << "acceptance: " << g_pass << " passed, " << g_fail << " failed, " << g_skip
              << " skipped" << std::endl;
    return g_fail == 0 ? 0 : 1;
}
