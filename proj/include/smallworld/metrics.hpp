#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "smallworld/graph.hpp"

// Structural metrics: density, both standard clustering coefficients, exact
// diameter, degree distribution, and a log-log power-law fit of the degree
// histogram tail.

namespace smallworld {

inline double density(const Graph& g) {
    const auto n = static_cast<double>(g.node_count());
    if (g.node_count() < 2) throw std::invalid_argument("density undefined for n < 2");
    return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

// Triangles through each node. Every edge (u, v) with u < v is scanned once;
// common neighbors w > v are found by merging the two sorted lists, so each
// triangle is discovered exactly once (at its lowest edge) and credited to
// all three corners.
inline std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint64_t> tri(n, 0);
    for (NodeId u = 0; u < n; ++u) {
        auto nu = g.neighbors(u);
        for (NodeId v : nu) {
            if (v <= u) continue;
            auto nv = g.neighbors(v);
            auto iu = std::upper_bound(nu.begin(), nu.end(), v);
            auto iv = std::upper_bound(nv.begin(), nv.end(), v);
            while (iu != nu.end() && iv != nv.end()) {
                if (*iu < *iv) ++iu;
                else if (*iv < *iu) ++iv;
                else {
                    ++tri[u];
                    ++tri[v];
                    ++tri[*iu];
                    ++iu;
                    ++iv;
                }
            }
        }
    }
    return tri;
}

// Mean over all nodes of tri(v) / C(deg(v), 2), with nodes of degree < 2
// contributing 0. This is the "average of local coefficients" definition.
inline double avg_local_clustering(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw std::invalid_argument("clustering undefined for empty graph");
    auto tri = triangles_per_node(g);
    double sum = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        auto d = g.degree(v);
        if (d < 2) continue;
        double pairs = 0.5 * static_cast<double>(d) * static_cast<double>(d - 1);
        sum += static_cast<double>(tri[v]) / pairs;
    }
    return sum / static_cast<double>(n);
}

// Global ratio 3*triangles / connected triples (the transitivity definition).
// Graphs with no path of length two have no triples; that ratio is undefined.
inline double transitivity(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw std::invalid_argument("clustering undefined for empty graph");
    auto tri = triangles_per_node(g);
    double closed = 0.0, triples = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        auto d = g.degree(v);
        closed += static_cast<double>(tri[v]);
        if (d >= 2) triples += 0.5 * static_cast<double>(d) * static_cast<double>(d - 1);
    }
    if (triples == 0.0) throw std::invalid_argument("transitivity undefined: no connected triples");
    return closed / triples;
}

namespace detail {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

// BFS from source; fills dist (preallocated, reset here) and returns the
// farthest node (smallest id among ties) with its distance and a parent
// array for path recovery.
struct BfsResult {
    NodeId farthest;
    std::uint32_t ecc;
};

inline BfsResult bfs(const Graph& g, NodeId source, std::vector<std::uint32_t>& dist,
                     std::vector<NodeId>* parent = nullptr) {
    dist.assign(g.node_count(), kUnvisited);
    if (parent) parent->assign(g.node_count(), source);
    std::vector<NodeId> frontier{source}, next;
    dist[source] = 0;
    std::uint32_t level = 0;
    NodeId farthest = source;
    while (!frontier.empty()) {
        next.clear();
        for (NodeId v : frontier) {
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] != kUnvisited) continue;
                dist[w] = level + 1;
                if (parent) (*parent)[w] = v;
                next.push_back(w);
            }
        }
        if (!next.empty()) {
            ++level;
            farthest = *std::min_element(next.begin(), next.end());
        }
        frontier.swap(next);
    }
    return {farthest, level};
}

inline void require_connected(const std::vector<std::uint32_t>& dist) {
    for (auto d : dist)
        if (d == kUnvisited)
            throw std::invalid_argument("graph not connected; extract a component first");
}

// All-pairs scan; only used for small graphs and tests.
inline std::uint32_t diameter_all_pairs(const Graph& g) {
    std::vector<std::uint32_t> dist;
    std::uint32_t best = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto r = bfs(g, v, dist);
        require_connected(dist);
        best = std::max(best, r.ecc);
    }
    return best;
}

} // namespace detail

// Exact diameter of a connected graph via iterative fringe upper bounds.
//
// A double sweep gives a lower bound lb and a path whose midpoint u has small
// eccentricity. Every node at distance i from u has eccentricity at most 2i,
// so processing fringes F(i) from i = ecc(u) downward and maxing their true
// eccentricities into lb lets us stop as soon as lb > 2(i-1): no unprocessed
// node can beat the bound. Tiny graphs just take the all-pairs scan.
inline std::uint32_t diameter_exact(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw std::invalid_argument("diameter undefined for empty graph");
    if (n == 1) return 0;
    if (n <= 64) return detail::diameter_all_pairs(g);

    NodeId hub = 0;
    for (NodeId v = 1; v < n; ++v)
        if (g.degree(v) > g.degree(hub)) hub = v;

    std::vector<std::uint32_t> dist;
    std::vector<NodeId> parent;
    auto s1 = detail::bfs(g, hub, dist);
    detail::require_connected(dist);
    NodeId a = s1.farthest;
    auto s2 = detail::bfs(g, a, dist, &parent);
    std::uint32_t lb = s2.ecc;
    NodeId b = s2.farthest;

    // Midpoint of the a-b shortest path, walking half the distance back from b.
    NodeId u = b;
    for (std::uint32_t i = 0; i < lb / 2; ++i) u = parent[u];

    auto su = detail::bfs(g, u, dist);
    std::uint32_t i = su.ecc;
    lb = std::max(lb, su.ecc);
    std::uint32_t ub = 2 * su.ecc;

    std::vector<std::vector<NodeId>> fringe(i + 1);
    for (NodeId v = 0; v < n; ++v) fringe[dist[v]].push_back(v);

    // Nodes at distance <= i from u all have eccentricity <= 2i. Once a fringe
    // is fully processed the bound drops to 2(i-1); if lb ever clears the bound
    // on everything unprocessed, lb is the diameter.
    std::vector<std::uint32_t> d2;
    while (ub > lb && i > 0) {
        for (NodeId v : fringe[i]) {
            auto r = detail::bfs(g, v, d2);
            lb = std::max(lb, r.ecc);
            if (lb >= 2 * i) return lb;
        }
        ub = 2 * (i - 1);
        --i;
    }
    return lb;
}

// degree -> number of nodes with that degree; keys ascending.
inline std::map<std::size_t, std::size_t> degree_distribution(const Graph& g) {
    std::map<std::size_t, std::size_t> hist;
    for (NodeId v = 0; v < g.node_count(); ++v) ++hist[g.degree(v)];
    return hist;
}

struct PowerLawFit {
    double gamma = 0.0;         // exponent: count ~ k^(-gamma)
    double log_intercept = 0.0; // intercept of the ln-ln regression line
    double r_squared = 0.0;
    std::size_t k_min = 1;
    std::size_t k_max = 0;
    std::size_t points_used = 0;
};

// Ordinary least squares on (ln k, ln count) over nonzero histogram entries
// with k >= k_min. gamma is the negated slope. A degenerate vertical spread
// (all counts equal) fits exactly, so R^2 is 1 by convention.
inline PowerLawFit fit_power_law(const std::map<std::size_t, std::size_t>& hist,
                                 std::size_t k_min = 1) {
    std::vector<std::pair<double, double>> pts;
    PowerLawFit fit;
    fit.k_min = k_min;
    for (const auto& [k, count] : hist) {
        if (k < k_min || k == 0 || count == 0) continue;
        pts.emplace_back(std::log(static_cast<double>(k)),
                         std::log(static_cast<double>(count)));
        fit.k_max = k;
    }
    if (pts.size() < 3)
        throw std::invalid_argument("power-law fit needs at least 3 distinct degrees");
    double sx = 0, sy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / static_cast<double>(pts.size());
    const double my = sy / static_cast<double>(pts.size());
    double sxx = 0, syy = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("power-law fit needs distinct degrees");
    const double slope = sxy / sxx;
    fit.gamma = -slope;
    fit.log_intercept = my - slope * mx;
    fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    fit.points_used = pts.size();
    return fit;
}

struct MetricsReport {
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<double> density;  // absent for n < 2
    double avg_local_clustering = 0.0;
    double transitivity = 0.0;      // 0 when no connected triples exist
    std::optional<std::uint32_t> diameter;
    bool diameter_on_giant = false; // diameter measured on giant component only
    std::size_t giant_n = 0;
    std::size_t degree_min = 0;
    double degree_mean = 0.0;
    std::size_t degree_max = 0;
};

// One-stop structural summary. Disconnected input is accepted: the diameter
// is then measured on the giant component and flagged as such. Heavy diameter
// computation can be skipped for callers that only need the cheap metrics.
inline MetricsReport compute_metrics(const Graph& g, bool with_diameter = true) {
    MetricsReport r;
    r.n = g.node_count();
    r.m = g.edge_count();
    if (r.n == 0) throw std::invalid_argument("metrics undefined for empty graph");
    if (r.n >= 2) r.density = density(g);

    r.avg_local_clustering = avg_local_clustering(g);
    auto tri = triangles_per_node(g);
    double closed = 0.0, triples = 0.0;
    std::size_t dmin = std::numeric_limits<std::size_t>::max(), dmax = 0;
    double dsum = 0.0;
    for (NodeId v = 0; v < r.n; ++v) {
        auto d = g.degree(v);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
        dsum += static_cast<double>(d);
        closed += static_cast<double>(tri[v]);
        if (d >= 2) triples += 0.5 * static_cast<double>(d) * static_cast<double>(d - 1);
    }
    r.transitivity = (triples == 0.0) ? 0.0 : closed / triples;
    r.degree_min = dmin;
    r.degree_max = dmax;
    r.degree_mean = dsum / static_cast<double>(r.n);

    auto labeling = connected_components(g);
    r.giant_n = labeling.sizes[0];
    if (with_diameter) {
        if (labeling.component_count() == 1) {
            r.diameter = diameter_exact(g);
        } else {
            r.diameter = diameter_exact(giant_component(g));
            r.diameter_on_giant = true;
        }
    }
    return r;
}

} // namespace smallworld
