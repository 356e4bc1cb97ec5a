#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smallworld/graph.hpp"
#include "smallworld/metrics.hpp"
#include "smallworld/rng.hpp"

// Reference models a real network is judged against: a matched Erdos-Renyi
// random graph (same n, same expected m) and a ring lattice of the same
// density. Small-world structure shows up as clustering far above the random
// graph at a diameter far below the lattice.

namespace smallworld {

// G(n, p) sampled by skipping over non-edges: in the linearized sequence of
// candidate pairs, gaps between successive edges are geometric, so the cost
// is proportional to the number of edges generated rather than n^2.
inline Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
    if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("edge probability out of [0, 1]");
    std::vector<std::pair<NodeId, NodeId>> edges;
    if (p >= 1.0) {
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        return Graph::from_edge_list(n, edges);
    }
    if (p > 0.0 && n >= 2) {
        const double log1mp = std::log1p(-p);
        edges.reserve(static_cast<std::size_t>(
            p * 0.5 * static_cast<double>(n) * static_cast<double>(n - 1) * 1.1) + 16);
        std::int64_t v = 1, w = -1;
        const auto nn = static_cast<std::int64_t>(n);
        while (v < nn) {
            double r = rng.next_double();
            // r == 0 would send the skip to infinity; nudge to the smallest
            // representable draw instead.
            if (r <= 0.0) r = 0x1.0p-53;
            w += 1 + static_cast<std::int64_t>(std::floor(std::log(r) / log1mp));
            while (w >= v && v < nn) {
                w -= v;
                ++v;
            }
            if (v < nn)
                edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
        }
    }
    std::sort(edges.begin(), edges.end());
    return Graph::from_edge_list(n, edges);
}

// Edge probability that matches an observed graph's density: expected edge
// count of G(n, p) equals m.
inline double matched_er_probability(std::size_t n, std::size_t m) {
    if (n < 2) throw std::invalid_argument("matched model undefined for n < 2");
    return 2.0 * static_cast<double>(m) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline Graph matched_er(const Graph& g, std::uint64_t seed) {
    Rng rng(seed);
    return erdos_renyi(g.node_count(), matched_er_probability(g.node_count(), g.edge_count()), rng);
}

// Circulant ring C_n(1..k/2): node i connects to its k/2 nearest neighbors on
// each side. k must be even and 2 <= k < n.
inline Graph ring_lattice(std::size_t n, std::size_t k) {
    if (k % 2 != 0) throw std::invalid_argument("ring lattice degree must be even");
    if (k < 2 || k >= n) throw std::invalid_argument("ring lattice needs 2 <= k < n");
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(n * k / 2);
    const std::size_t half = k / 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j <= half; ++j) {
            std::size_t t = (i + j) % n;
            edges.emplace_back(static_cast<NodeId>(std::min(i, t)),
                               static_cast<NodeId>(std::max(i, t)));
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edge_list(n, edges);
}

// Even lattice degree closest to the observed mean degree density*(n-1),
// floored at 2. Exact midpoints round up. Densities so high that no valid
// even k < n exists cannot be lattice-matched.
inline std::size_t lattice_k_for_density(std::size_t n, double density_value) {
    if (n < 3) throw std::invalid_argument("lattice matching needs n >= 3");
    if (!(density_value >= 0.0)) throw std::invalid_argument("density must be non-negative");
    const double mean = density_value * static_cast<double>(n - 1);
    auto k = static_cast<std::size_t>(2.0 * std::floor(mean / 2.0 + 0.5));
    k = std::max<std::size_t>(k, 2);
    if (k >= n) throw std::invalid_argument("density too high for ring lattice");
    return k;
}

// Exact diameter of C_n(1..k/2): the farthest ring distance is floor(n/2) and
// each hop covers at most k/2 of it, so the diameter is the ceiling of their
// ratio.
inline std::uint32_t lattice_diameter_analytic(std::size_t n, std::size_t k) {
    if (k % 2 != 0 || k < 2 || k >= n)
        throw std::invalid_argument("ring lattice needs even 2 <= k < n");
    const std::size_t half = k / 2;
    return static_cast<std::uint32_t>((n / 2 + half - 1) / half);
}

struct ErReport {
    std::uint64_t seed = 0;
    double p = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    double avg_local_clustering = 0.0;
    double transitivity = 0.0;
    double expected_clustering = 0.0; // = p for G(n, p)
    std::uint32_t diameter = 0;
    bool diameter_on_giant = false;
    std::size_t giant_n = 0;
};

struct LatticeReport {
    std::size_t n = 0;
    std::size_t k = 0;
    bool k_clamped = false; // target density wanted more, capped at largest valid k
    std::size_t m = 0;
    double avg_local_clustering = 0.0;
    double transitivity = 0.0;
    std::uint32_t diameter_analytic = 0;
    bool diameter_bfs_verified = false;
};

struct ComparisonReport {
    MetricsReport target;
    ErReport er;
    LatticeReport lattice;
    double clustering_ratio_vs_er = 0.0;  // target transitivity / ER transitivity
    double diameter_ratio_vs_lattice = 0.0; // lattice diameter / target diameter
};

// Builds both matched baselines and the headline ratios. The target may be
// disconnected; path metrics then come from its giant component (flagged in
// the report). The lattice k is clamped to the largest valid even value when
// the target is too dense for an exact match, and its diameter is additionally
// BFS-verified when the lattice is small enough for that to be cheap.
inline ComparisonReport compare_small_world(const Graph& g, std::uint64_t seed,
                                            std::size_t bfs_verify_limit = 10000,
                                            const MetricsReport* precomputed_target = nullptr) {
    const std::size_t n = g.node_count();
    if (n < 3) throw std::invalid_argument("comparison needs at least 3 nodes");

    ComparisonReport rep;
    rep.target = precomputed_target ? *precomputed_target : compute_metrics(g);

    rep.er.seed = seed;
    rep.er.p = matched_er_probability(n, g.edge_count());
    Rng rng(seed);
    Graph er = erdos_renyi(n, rep.er.p, rng);
    rep.er.n = er.node_count();
    rep.er.m = er.edge_count();
    rep.er.avg_local_clustering = avg_local_clustering(er);
    rep.er.transitivity = [&] {
        try {
            return transitivity(er);
        } catch (const std::invalid_argument&) {
            return 0.0; // no connected triples sampled
        }
    }();
    rep.er.expected_clustering = rep.er.p;
    auto er_labels = connected_components(er);
    rep.er.giant_n = er_labels.sizes[0];
    if (er_labels.component_count() == 1) {
        rep.er.diameter = diameter_exact(er);
    } else {
        rep.er.diameter = diameter_exact(giant_component(er));
        rep.er.diameter_on_giant = true;
    }

    rep.lattice.n = n;
    std::size_t k = 0;
    try {
        k = lattice_k_for_density(n, *rep.target.density);
    } catch (const std::invalid_argument&) {
        // Too dense to match exactly: fall back to the largest valid even k.
        k = (n - 1) & ~std::size_t{1};
        rep.lattice.k_clamped = true;
    }
    rep.lattice.k = k;
    Graph lat = ring_lattice(n, k);
    rep.lattice.m = lat.edge_count();
    rep.lattice.avg_local_clustering = avg_local_clustering(lat);
    rep.lattice.transitivity = [&] {
        try {
            return transitivity(lat);
        } catch (const std::invalid_argument&) {
            return 0.0; // k = 2 ring has no triangles but does have triples; defensive
        }
    }();
    rep.lattice.diameter_analytic = lattice_diameter_analytic(n, k);
    if (n <= bfs_verify_limit) {
        auto bfs_diam = diameter_exact(lat);
        if (bfs_diam != rep.lattice.diameter_analytic)
            throw std::logic_error("lattice diameter formula disagrees with BFS");
        rep.lattice.diameter_bfs_verified = true;
    }

    rep.clustering_ratio_vs_er =
        rep.er.transitivity > 0.0 ? rep.target.transitivity / rep.er.transitivity : 0.0;
    if (rep.target.diameter && *rep.target.diameter > 0)
        rep.diameter_ratio_vs_lattice =
            static_cast<double>(rep.lattice.diameter_analytic) /
            static_cast<double>(*rep.target.diameter);
    return rep;
}

} // namespace smallworld
