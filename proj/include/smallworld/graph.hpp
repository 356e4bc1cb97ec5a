#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

// Compact immutable undirected simple graph.
//
// Nodes are dense integer ids 0..n-1 with a remap table back to the external
// string keys they were built from. Adjacency is CSR with every neighbor list
// sorted ascending, which gives binary-search edge queries and linear-merge
// triangle counting. All algorithms in this library run on the integer ids;
// report layers translate back to keys.

namespace smallworld {

using NodeId = std::uint32_t;

// Set of nodes over one specific graph: sorted, unique, all members < n.
struct NodeSet {
    std::vector<NodeId> members;

    static NodeSet of(std::vector<NodeId> ids, std::size_t graph_node_count) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (!ids.empty() && ids.back() >= graph_node_count)
            throw std::out_of_range("NodeSet member out of range for graph");
        return NodeSet{std::move(ids)};
    }

    bool contains(NodeId v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }
    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
};

// What build_graph removed or ignored while turning raw pairs into a simple graph.
struct CleaningSummary {
    std::size_t input_pairs = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_collapsed = 0;
    std::size_t unknown_endpoints_dropped = 0; // endpoints outside a supplied key universe
};

class Graph {
public:
    Graph() = default;

    std::size_t node_count() const { return keys_.size(); }
    std::size_t edge_count() const { return adj_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId v) const {
        check_node(v);
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    std::size_t degree(NodeId v) const {
        check_node(v);
        return offsets_[v + 1] - offsets_[v];
    }

    bool has_edge(NodeId u, NodeId v) const {
        auto nb = neighbors(u);
        check_node(v);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    const std::string& key_of(NodeId v) const {
        check_node(v);
        return keys_[v];
    }

    std::optional<NodeId> node_by_key(const std::string& key) const {
        auto it = key_index_.find(key);
        if (it == key_index_.end()) return std::nullopt;
        return it->second;
    }

    // For subgraphs: node id in the parent graph; empty for root graphs.
    const std::vector<NodeId>& parent_ids() const { return parent_ids_; }

    // Builds a graph from an already-clean edge list: no loops, no duplicates,
    // every endpoint < n. Keys default to the decimal node index.
    static Graph from_edge_list(std::size_t n,
                                const std::vector<std::pair<NodeId, NodeId>>& edges,
                                std::vector<std::string> keys = {}) {
        Graph g;
        if (keys.empty()) {
            keys.reserve(n);
            for (std::size_t i = 0; i < n; ++i) keys.push_back(std::to_string(i));
        }
        if (keys.size() != n) throw std::invalid_argument("key table size mismatch");
        g.keys_ = std::move(keys);
        g.build_index();
        g.build_adjacency(n, edges);
        return g;
    }

private:
    std::vector<std::size_t> offsets_; // n+1
    std::vector<NodeId> adj_;          // 2m, sorted per node
    std::vector<std::string> keys_;
    std::unordered_map<std::string, NodeId> key_index_;
    std::vector<NodeId> parent_ids_;

    void check_node(NodeId v) const {
        if (v >= keys_.size()) throw std::out_of_range("node id out of range");
    }

    void build_index() {
        key_index_.reserve(keys_.size());
        for (NodeId i = 0; i < keys_.size(); ++i) key_index_.emplace(keys_[i], i);
    }

    void build_adjacency(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
        offsets_.assign(n + 1, 0);
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
            if (u == v) throw std::invalid_argument("self-loop in clean edge list");
            ++offsets_[u + 1];
            ++offsets_[v + 1];
        }
        for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
        adj_.resize(edges.size() * 2);
        std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
        for (auto [u, v] : edges) {
            adj_[cursor[u]++] = v;
            adj_[cursor[v]++] = u;
        }
        for (std::size_t i = 0; i < n; ++i)
            std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                      adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
        for (std::size_t i = 0; i < n; ++i) {
            auto first = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
            auto last = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
            if (std::adjacent_find(first, last) != last)
                throw std::invalid_argument("duplicate edge in clean edge list");
        }
    }

    friend struct GraphBuilderAccess;
};

// Internal hook so free functions in this header can set private members.
struct GraphBuilderAccess {
    static void set_parent_ids(Graph& g, std::vector<NodeId> ids) {
        g.parent_ids_ = std::move(ids);
    }
};

struct BuildResult {
    Graph graph;
    CleaningSummary cleaning;
};

// Builds a simple undirected graph from raw (key, key) pairs.
//
// Self-loops are dropped and duplicate pairs (in either order) collapse to one
// edge; both are counted in the cleaning summary so dataset totals stay
// auditable. If a key universe is given, its keys become nodes 0..k-1 in the
// given order (isolated keys stay as degree-0 nodes) and pairs touching keys
// outside the universe are dropped and counted. Without a universe, nodes are
// created in first-appearance order.
inline BuildResult build_graph(const std::vector<std::pair<std::string, std::string>>& edges,
                               const std::vector<std::string>& key_universe = {}) {
    if (edges.empty() && key_universe.empty())
        throw std::invalid_argument("empty input");

    CleaningSummary cleaning;
    cleaning.input_pairs = edges.size();

    std::vector<std::string> keys;
    std::unordered_map<std::string, NodeId> index;
    keys.reserve(key_universe.size());
    for (const auto& k : key_universe) {
        if (k.empty()) throw std::invalid_argument("empty key in key universe");
        auto [it, inserted] = index.emplace(k, static_cast<NodeId>(keys.size()));
        if (!inserted) throw std::invalid_argument("duplicate key in key universe: " + k);
        keys.push_back(k);
    }
    const bool closed_universe = !key_universe.empty();

    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(edges.size());
    std::size_t row = 0;
    for (const auto& [a, b] : edges) {
        ++row;
        if (a.empty() || b.empty())
            throw std::invalid_argument("malformed edge pair at row " + std::to_string(row));
        auto resolve = [&](const std::string& k) -> std::optional<NodeId> {
            auto it = index.find(k);
            if (it != index.end()) return it->second;
            if (closed_universe) return std::nullopt;
            NodeId id = static_cast<NodeId>(keys.size());
            index.emplace(k, id);
            keys.push_back(k);
            return id;
        };
        auto u = resolve(a);
        auto v = u ? resolve(b) : std::nullopt;
        if (!u || !v) {
            ++cleaning.unknown_endpoints_dropped;
            continue;
        }
        if (*u == *v) {
            ++cleaning.self_loops_dropped;
            continue;
        }
        pairs.emplace_back(std::min(*u, *v), std::max(*u, *v));
    }

    std::sort(pairs.begin(), pairs.end());
    auto last = std::unique(pairs.begin(), pairs.end());
    cleaning.duplicates_collapsed = static_cast<std::size_t>(pairs.end() - last);
    pairs.erase(last, pairs.end());

    BuildResult result;
    const std::size_t node_total = keys.size();
    result.graph = Graph::from_edge_list(node_total, pairs, std::move(keys));
    result.cleaning = cleaning;
    return result;
}

inline std::size_t degree(const Graph& g, NodeId v) { return g.degree(v); }

// Node -> component id plus component sizes. Ids are dense, ordered by
// descending size; ties go to the component containing the smallest node,
// so id 0 is always the giant component.
struct ComponentLabeling {
    std::vector<NodeId> label;
    std::vector<std::size_t> sizes;
    std::size_t component_count() const { return sizes.size(); }
};

inline ComponentLabeling connected_components(const Graph& g) {
    const std::size_t n = g.node_count();
    constexpr NodeId kUnlabeled = static_cast<NodeId>(-1);
    std::vector<NodeId> provisional(n, kUnlabeled);
    std::vector<std::size_t> sizes;
    std::vector<NodeId> queue;
    for (NodeId start = 0; start < n; ++start) {
        if (provisional[start] != kUnlabeled) continue;
        NodeId comp = static_cast<NodeId>(sizes.size());
        std::size_t count = 0;
        queue.clear();
        queue.push_back(start);
        provisional[start] = comp;
        while (!queue.empty()) {
            NodeId v = queue.back();
            queue.pop_back();
            ++count;
            for (NodeId w : g.neighbors(v)) {
                if (provisional[w] == kUnlabeled) {
                    provisional[w] = comp;
                    queue.push_back(w);
                }
            }
        }
        sizes.push_back(count);
    }

    // Reorder ids by descending size; stable sort keeps discovery order
    // (= smallest contained NodeId) among equal sizes.
    std::vector<NodeId> order(sizes.size());
    for (NodeId i = 0; i < sizes.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return sizes[a] > sizes[b]; });
    std::vector<NodeId> remap(sizes.size());
    for (NodeId rank = 0; rank < order.size(); ++rank) remap[order[rank]] = rank;

    ComponentLabeling out;
    out.label.resize(n);
    for (std::size_t v = 0; v < n; ++v) out.label[v] = remap[provisional[v]];
    out.sizes.resize(sizes.size());
    for (NodeId i = 0; i < sizes.size(); ++i) out.sizes[remap[i]] = sizes[i];
    return out;
}

// New graph with exactly the nodes of s and the edges of g inside s. Keys are
// carried over; parent_ids() maps each new node back to its id in g.
inline Graph induced_subgraph(const Graph& g, const NodeSet& s) {
    if (s.empty()) throw std::invalid_argument("empty subgraph request");
    const std::size_t n = g.node_count();
    constexpr NodeId kAbsent = static_cast<NodeId>(-1);
    std::vector<NodeId> to_new(n, kAbsent);
    std::vector<std::string> keys;
    keys.reserve(s.size());
    for (NodeId i = 0; i < s.members.size(); ++i) {
        NodeId old = s.members[i];
        if (old >= n) throw std::out_of_range("NodeSet member out of range for graph");
        to_new[old] = i;
        keys.push_back(g.key_of(old));
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId old_u : s.members) {
        NodeId u = to_new[old_u];
        for (NodeId old_v : g.neighbors(old_u)) {
            if (old_v <= old_u) continue;
            NodeId v = to_new[old_v];
            if (v != kAbsent) edges.emplace_back(u, v);
        }
    }
    Graph out = Graph::from_edge_list(s.size(), edges, std::move(keys));
    GraphBuilderAccess::set_parent_ids(out, s.members);
    return out;
}

inline Graph giant_component(const Graph& g) {
    if (g.node_count() == 0) throw std::invalid_argument("empty graph");
    auto labeling = connected_components(g);
    std::vector<NodeId> members;
    members.reserve(labeling.sizes[0]);
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (labeling.label[v] == 0) members.push_back(v);
    return induced_subgraph(g, NodeSet{std::move(members)});
}

// The floor(fraction*n) highest-degree nodes; ties at the cutoff go to the
// smaller NodeId. A small epsilon keeps floor() faithful to the real-valued
// product when fraction*n is representable only approximately.
inline NodeSet top_fraction_by_degree(const Graph& g, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("fraction out of range (0, 1]");
    const std::size_t n = g.node_count();
    auto take = static_cast<std::size_t>(
        std::max(0.0, fraction * static_cast<double>(n) + 1e-9));
    take = std::min(take, n);
    std::vector<NodeId> order(n);
    for (NodeId i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        auto da = g.degree(a), db = g.degree(b);
        if (da != db) return da > db;
        return a < b;
    });
    order.resize(take);
    return NodeSet::of(std::move(order), n);
}

} // namespace smallworld
