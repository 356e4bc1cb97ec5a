#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smallworld/graph.hpp"
#include "smallworld/ingest.hpp"
#include "smallworld/metrics.hpp"
#include "smallworld/rng.hpp"

// Louvain community detection: greedy modularity moves over repeated passes,
// then aggregation of communities into a weighted coarser graph, repeated
// until no move helps. Runs are deterministic for a fixed seed.

namespace smallworld {

struct LouvainConfig {
    std::uint64_t seed = 0;
    double min_gain = 1e-7;  // smallest modularity gain that justifies a move
    std::size_t max_passes = 32; // move sweeps per level
};

struct Partition {
    std::vector<std::uint32_t> assignment; // node -> community, dense ids
    std::size_t community_count = 0;
    double modularity = 0.0;
    std::vector<double> level_modularity; // after each aggregation level
};

// Newman modularity of an arbitrary assignment on an unweighted graph:
// sum over communities of e_c/m - (d_c/2m)^2. Community ids need not be dense.
inline double modularity(const Graph& g, const std::vector<std::uint32_t>& assignment) {
    const std::size_t n = g.node_count();
    const double m = static_cast<double>(g.edge_count());
    if (assignment.size() != n) throw std::invalid_argument("assignment size mismatch");
    if (g.edge_count() == 0) throw std::invalid_argument("modularity undefined for graph with no edges");

    std::map<std::uint32_t, std::pair<double, double>> acc; // community -> (internal edges, degree sum)
    for (NodeId v = 0; v < n; ++v) {
        auto& slot = acc[assignment[v]];
        slot.second += static_cast<double>(g.degree(v));
        for (NodeId w : g.neighbors(v))
            if (w > v && assignment[w] == assignment[v]) slot.first += 1.0;
    }
    double q = 0.0;
    for (const auto& [c, ed] : acc) {
        const auto [e_c, d_c] = ed;
        q += e_c / m - (d_c / (2.0 * m)) * (d_c / (2.0 * m));
    }
    return q;
}

namespace louvain_detail {

// Weighted multigraph view used between levels. Self-loops hold collapsed
// intra-community weight, stored once; wdeg counts them twice, matching the
// usual adjacency-matrix convention A_vv = 2 * loop(v).
struct LevelGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj; // no loops here
    std::vector<double> loop;
    std::vector<double> wdeg;
    double total_weight = 0.0; // W = sum(wdeg) / 2

    static LevelGraph from_graph(const Graph& g) {
        LevelGraph lg;
        lg.n = g.node_count();
        lg.adj.resize(lg.n);
        lg.loop.assign(lg.n, 0.0);
        lg.wdeg.resize(lg.n);
        for (NodeId v = 0; v < lg.n; ++v) {
            auto nb = g.neighbors(v);
            lg.adj[v].reserve(nb.size());
            for (NodeId w : nb) lg.adj[v].emplace_back(w, 1.0);
            lg.wdeg[v] = static_cast<double>(nb.size());
        }
        lg.total_weight = static_cast<double>(g.edge_count());
        return lg;
    }
};

// One level of greedy moves. Returns the node -> community map (community ids
// are node ids of this level, not dense) and whether anything moved.
inline bool move_phase(const LevelGraph& lg, const LouvainConfig& cfg, Rng& rng,
                       std::vector<std::uint32_t>& comm) {
    const std::size_t n = lg.n;
    const double two_w = 2.0 * lg.total_weight;
    comm.resize(n);
    std::iota(comm.begin(), comm.end(), 0u);
    std::vector<double> tot(lg.wdeg);

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);

    // Scratch accumulator for weights from v to each touched community.
    std::vector<double> w_to(n, 0.0);
    std::vector<std::uint32_t> touched;

    bool any_move = false;
    for (std::size_t pass = 0; pass < cfg.max_passes; ++pass) {
        std::size_t moves = 0;
        for (std::uint32_t v : order) {
            const std::uint32_t old_c = comm[v];
            const double k_v = lg.wdeg[v];
            tot[old_c] -= k_v;

            touched.clear();
            touched.push_back(old_c); // candidate even with no neighbor inside
            for (const auto& [u, w] : lg.adj[v]) {
                const std::uint32_t c = comm[u];
                if (w_to[c] == 0.0) touched.push_back(c);
                w_to[c] += w;
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

            // Ascending scan with strict improvement keeps the lowest community
            // id among exact ties.
            double best_score = -std::numeric_limits<double>::infinity();
            std::uint32_t best_c = old_c;
            double old_score = 0.0;
            for (std::uint32_t c : touched) {
                const double score = w_to[c] - tot[c] * k_v / two_w;
                if (c == old_c) old_score = score;
                if (score > best_score) {
                    best_score = score;
                    best_c = c;
                }
            }
            for (std::uint32_t c : touched) w_to[c] = 0.0;

            const double gain = (best_score - old_score) / lg.total_weight;
            if (best_c != old_c && gain > cfg.min_gain) {
                comm[v] = best_c;
                tot[best_c] += k_v;
                ++moves;
            } else {
                tot[old_c] += k_v;
            }
        }
        if (moves == 0) break;
        any_move = true;
    }
    return any_move;
}

// Collapses communities into single nodes. renumber maps this level's
// community ids to dense next-level ids in ascending order.
inline LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm,
                            std::vector<std::uint32_t>& renumber) {
    renumber.assign(lg.n, 0);
    std::vector<std::uint32_t> used;
    used.reserve(lg.n);
    for (std::uint32_t c : comm) used.push_back(c);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<std::uint32_t> dense(lg.n, 0);
    for (std::uint32_t i = 0; i < used.size(); ++i) dense[used[i]] = i;
    for (std::size_t v = 0; v < lg.n; ++v) renumber[v] = dense[comm[v]];

    LevelGraph next;
    next.n = used.size();
    next.adj.resize(next.n);
    next.loop.assign(next.n, 0.0);
    next.wdeg.assign(next.n, 0.0);

    std::map<std::pair<std::uint32_t, std::uint32_t>, double> between;
    for (std::size_t v = 0; v < lg.n; ++v) {
        const std::uint32_t cv = renumber[v];
        next.loop[cv] += lg.loop[v];
        for (const auto& [u, w] : lg.adj[v]) {
            if (u < v) continue; // undirected: each pair once
            const std::uint32_t cu = renumber[u];
            if (cu == cv) next.loop[cv] += w;
            else between[{std::min(cu, cv), std::max(cu, cv)}] += w;
        }
    }
    for (const auto& [pair_cd, w] : between) {
        next.adj[pair_cd.first].emplace_back(pair_cd.second, w);
        next.adj[pair_cd.second].emplace_back(pair_cd.first, w);
    }
    for (std::size_t c = 0; c < next.n; ++c) {
        double s = 2.0 * next.loop[c];
        for (const auto& [u, w] : next.adj[c]) s += w;
        next.wdeg[c] = s;
        next.total_weight += s;
    }
    next.total_weight /= 2.0;
    // All weights are integer-valued sums of unit edges, so conservation must
    // be exact; a mismatch means the aggregation itself is broken.
    if (next.total_weight != lg.total_weight)
        throw std::logic_error("aggregation changed total edge weight");
    return next;
}

// Modularity of the identity partition on an aggregated graph.
inline double identity_modularity(const LevelGraph& lg) {
    double q = 0.0;
    const double w = lg.total_weight;
    for (std::size_t c = 0; c < lg.n; ++c)
        q += lg.loop[c] / w - (lg.wdeg[c] / (2.0 * w)) * (lg.wdeg[c] / (2.0 * w));
    return q;
}

// The greedy move order decides which local optimum a run lands in; restarts
// with distinct shuffles escape the bad ones. Small graphs get more restarts
// because they are cheap there and their optima are only a few basins apart.
inline std::size_t restart_runs(std::size_t n) { return n <= 512 ? 32 : 8; }

inline Partition single_run(const Graph& g, const LouvainConfig& cfg, std::uint64_t run) {
    const std::size_t n = g.node_count();
    Rng rng(cfg.seed + 0x9E3779B97F4A7C15ull * run);
    LevelGraph lg = LevelGraph::from_graph(g);

    Partition part;
    part.assignment.resize(n);
    std::iota(part.assignment.begin(), part.assignment.end(), 0u);

    std::vector<std::uint32_t> comm, renumber;
    for (;;) {
        const bool moved = move_phase(lg, cfg, rng, comm);
        if (!moved) break;
        const std::size_t before = lg.n;
        lg = aggregate(lg, comm, renumber);
        for (auto& a : part.assignment) a = renumber[a];
        part.level_modularity.push_back(identity_modularity(lg));
        if (lg.n == before) break;
    }

    // Relabel: size descending, ties by smallest member node id. Communities
    // are first keyed by their smallest member, which makes the sort stable
    // across platforms.
    std::vector<std::uint32_t> first_member(lg.n, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::size_t> size_of(lg.n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        auto c = part.assignment[v];
        ++size_of[c];
        first_member[c] = std::min(first_member[c], v);
    }
    std::vector<std::uint32_t> ids(lg.n);
    std::iota(ids.begin(), ids.end(), 0u);
    std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (size_of[a] != size_of[b]) return size_of[a] > size_of[b];
        return first_member[a] < first_member[b];
    });
    std::vector<std::uint32_t> relabel(lg.n);
    for (std::uint32_t rank = 0; rank < ids.size(); ++rank) relabel[ids[rank]] = rank;
    for (auto& a : part.assignment) a = relabel[a];

    part.community_count = lg.n;
    part.modularity = modularity(g, part.assignment);
    return part;
}

} // namespace louvain_detail

// Runs the full multilevel algorithm and keeps the best of a few shuffled
// restarts. Final community ids are relabeled by descending size, ties broken
// by the smallest member node id, so community 0 is always a largest one.
// Deterministic for a fixed seed.
inline Partition louvain(const Graph& g, const LouvainConfig& cfg = {}) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("modularity undefined for graph with no edges");
    Partition best;
    const std::size_t runs = louvain_detail::restart_runs(g.node_count());
    for (std::uint64_t run = 0; run < runs; ++run) {
        Partition part = louvain_detail::single_run(g, cfg, run);
        if (run == 0 || part.modularity > best.modularity) best = std::move(part);
    }
    return best;
}

// Community sizes indexed by community id (already size-ordered by louvain()).
inline std::vector<std::size_t> community_sizes(const Partition& p) {
    std::vector<std::size_t> sizes(p.community_count, 0);
    for (auto c : p.assignment) {
        if (c >= sizes.size()) sizes.resize(c + 1, 0);
        ++sizes[c];
    }
    return sizes;
}

struct CommunityProfile {
    std::uint32_t community_id = 0;
    MetricsReport metrics; // measured on the induced subgraph
    std::vector<std::pair<std::string, std::size_t>> genre_histogram;
};

// Members of one community as an induced subgraph plus some catalog color.
inline CommunityProfile community_profile(const Graph& g, const Partition& p,
                                          std::uint32_t community_id,
                                          const ArtistCatalog& catalog) {
    if (p.assignment.size() != g.node_count())
        throw std::invalid_argument("partition does not match graph");
    std::vector<NodeId> members;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (p.assignment[v] == community_id) members.push_back(v);
    if (members.empty())
        throw std::out_of_range("unknown community id: " + std::to_string(community_id));

    CommunityProfile prof;
    prof.community_id = community_id;
    Graph sub = induced_subgraph(g, NodeSet{std::move(members)});
    prof.metrics = compute_metrics(sub);
    prof.genre_histogram = genre_histogram(sub, catalog);
    return prof;
}

} // namespace smallworld
