#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smallworld/ingest.hpp"

// Genre co-occurrence: tags are nodes, and two tags are linked when enough
// artists carry both. Raw pair counts are kept in full; the network view only
// retains pairs above the threshold.

namespace smallworld {

struct CooccurrenceEdge {
    std::string genre_a; // alphabetically first of the pair
    std::string genre_b;
    std::uint64_t count = 0;
};

class CooccurrenceNetwork {
public:
    // Counts every unordered genre pair over all catalog records. With
    // inclusive = false an edge is retained when count > threshold, with
    // inclusive = true when count >= threshold.
    static CooccurrenceNetwork build(const ArtistCatalog& catalog, std::uint64_t threshold,
                                     bool inclusive = false) {
        CooccurrenceNetwork net;
        net.threshold_ = threshold;
        net.inclusive_ = inclusive;

        for (const auto& rec : catalog.records())
            for (const auto& g : rec.genres) net.tags_.push_back(g);
        std::sort(net.tags_.begin(), net.tags_.end());
        net.tags_.erase(std::unique(net.tags_.begin(), net.tags_.end()), net.tags_.end());
        for (std::uint32_t i = 0; i < net.tags_.size(); ++i) net.index_.emplace(net.tags_[i], i);

        for (const auto& rec : catalog.records()) {
            const auto& gs = rec.genres; // sorted unique, so ids ascend too
            for (std::size_t i = 0; i < gs.size(); ++i) {
                const std::uint32_t a = net.index_.at(gs[i]);
                for (std::size_t j = i + 1; j < gs.size(); ++j) {
                    const std::uint32_t b = net.index_.at(gs[j]);
                    ++net.counts_[{a, b}];
                }
            }
        }

        net.adj_.resize(net.tags_.size());
        for (const auto& [pair_ab, count] : net.counts_) {
            if (!net.retained(count)) continue;
            net.adj_[pair_ab.first].emplace_back(pair_ab.second, count);
            net.adj_[pair_ab.second].emplace_back(pair_ab.first, count);
        }
        for (auto& list : net.adj_) std::sort(list.begin(), list.end());
        return net;
    }

    std::size_t tag_count() const { return tags_.size(); }
    const std::vector<std::string>& tags() const { return tags_; }
    std::uint64_t threshold() const { return threshold_; }
    bool threshold_inclusive() const { return inclusive_; }

    std::uint64_t distinct_pairs() const { return counts_.size(); }

    std::uint64_t total_pair_count() const {
        std::uint64_t total = 0;
        for (const auto& [k, v] : counts_) total += v;
        return total;
    }

    std::size_t retained_edge_count() const {
        std::size_t total = 0;
        for (const auto& [k, v] : counts_)
            if (retained(v)) ++total;
        return total;
    }

    // How many artists carry both genres, regardless of the threshold.
    std::uint64_t raw_count(const std::string& a, const std::string& b) const {
        auto ia = tag_id(a), ib = tag_id(b);
        if (ia == ib) throw std::invalid_argument("co-occurrence of a genre with itself");
        auto it = counts_.find({std::min(ia, ib), std::max(ia, ib)});
        return it == counts_.end() ? 0 : it->second;
    }

    // Retained-network degree per tag, excluding isolated tags; ordered by
    // degree descending with alphabetical ties.
    std::vector<std::pair<std::string, std::size_t>> top_genres_by_degree(std::size_t top_n) const {
        std::vector<std::pair<std::string, std::size_t>> out;
        for (std::uint32_t t = 0; t < tags_.size(); ++t)
            if (!adj_[t].empty()) out.emplace_back(tags_[t], adj_[t].size());
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
        if (top_n > 0 && out.size() > top_n) out.resize(top_n);
        return out;
    }

    // Strongest retained partners of one genre, count descending, ties
    // alphabetical.
    std::vector<std::pair<std::string, std::uint64_t>>
    top_cooccurring(const std::string& genre, std::size_t top_n) const {
        auto t = tag_id(genre);
        std::vector<std::pair<std::string, std::uint64_t>> out;
        out.reserve(adj_[t].size());
        for (const auto& [other, count] : adj_[t]) out.emplace_back(tags_[other], count);
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
        if (top_n > 0 && out.size() > top_n) out.resize(top_n);
        return out;
    }

    // All retained edges, count descending, ties by alphabetical pair.
    std::vector<CooccurrenceEdge> edges() const {
        std::vector<CooccurrenceEdge> out;
        for (const auto& [pair_ab, count] : counts_) {
            if (!retained(count)) continue;
            out.push_back({tags_[pair_ab.first], tags_[pair_ab.second], count});
        }
        std::sort(out.begin(), out.end(), [](const CooccurrenceEdge& x, const CooccurrenceEdge& y) {
            if (x.count != y.count) return x.count > y.count;
            if (x.genre_a != y.genre_a) return x.genre_a < y.genre_a;
            return x.genre_b < y.genre_b;
        });
        return out;
    }

private:
    std::vector<std::string> tags_; // alphabetical
    std::map<std::string, std::uint32_t> index_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts_; // a < b
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> adj_;   // retained only
    std::uint64_t threshold_ = 0;
    bool inclusive_ = false;

    bool retained(std::uint64_t count) const {
        return inclusive_ ? count >= threshold_ : count > threshold_;
    }

    std::uint32_t tag_id(const std::string& genre) const {
        auto it = index_.find(genre);
        if (it == index_.end()) throw std::out_of_range("unknown genre: " + genre);
        return it->second;
    }
};

inline CooccurrenceNetwork build_cooccurrence(const ArtistCatalog& catalog,
                                              std::uint64_t threshold = 5,
                                              bool inclusive = false) {
    return CooccurrenceNetwork::build(catalog, threshold, inclusive);
}

} // namespace smallworld
