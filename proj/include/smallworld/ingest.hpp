#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "smallworld/csv.hpp"
#include "smallworld/graph.hpp"

// Dataset ingest: an artist catalog (one row per artist: id, name, genre list,
// chart-hit list, scalar stats) and a collaboration edge list keyed by the
// same ids. Structurally broken rows are rejected and logged, never silently
// dropped; cosmetically broken cells degrade to empty values with a warning.

namespace smallworld {

// Wrong column wiring (missing mapped column, bad config): the caller's setup
// is at fault, not the data.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaConfig {
    std::string id_column = "spotify_id";
    std::string name_column = "name";
    std::string genres_column = "genres";
    std::string chart_hits_column = "chart_hits";
    std::string popularity_column = "popularity";
    std::string followers_column = "followers";
    std::string edge_source_column = "id_0";
    std::string edge_target_column = "id_1";
    // Empty: list cells are bracketed literals like ['dance pop', 'pop'].
    // Otherwise cells are split on this delimiter.
    std::string genre_list_delimiter;
    // Applied to each chart-hit list element; capture 1 = country code,
    // capture 2 = hit count.
    std::string chart_hit_pattern = R"(^(.+?) \((\d+)\)$)";
};

struct ArtistRecord {
    std::string key;  // external id, graph key
    std::string name;
    std::vector<std::string> genres; // lowercase, sorted, unique
    std::vector<std::pair<std::string, std::uint32_t>> chart_hits; // (country, hits)
    std::optional<double> popularity;
    std::optional<double> followers;

    bool has_genre(const std::string& g) const {
        return std::binary_search(genres.begin(), genres.end(), g);
    }
    bool charted_in(const std::string& country) const {
        for (const auto& [c, hits] : chart_hits)
            if (c == country) return true;
        return false;
    }
};

class ArtistCatalog {
public:
    void add(ArtistRecord rec) {
        index_.emplace(rec.key, records_.size());
        records_.push_back(std::move(rec));
    }
    std::size_t size() const { return records_.size(); }
    const std::vector<ArtistRecord>& records() const { return records_; }
    bool contains(const std::string& key) const { return index_.count(key) != 0; }
    const ArtistRecord* find(const std::string& key) const {
        auto it = index_.find(key);
        return it == index_.end() ? nullptr : &records_[it->second];
    }
    const ArtistRecord& at(const std::string& key) const {
        auto* r = find(key);
        if (!r) throw std::out_of_range("unknown artist key: " + key);
        return *r;
    }
    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        out.reserve(records_.size());
        for (const auto& r : records_) out.push_back(r.key);
        return out;
    }

private:
    std::vector<ArtistRecord> records_; // file order
    std::unordered_map<std::string, std::size_t> index_;
};

struct RejectedRow {
    std::size_t line = 0; // 1-based line in the source file
    std::string reason;
};

// Shared bookkeeping for both load paths. Logged lists are capped; totals
// are exact. rows_in always equals accepted + rejected_total.
struct LoadIssues {
    std::size_t rows_in = 0;
    std::vector<RejectedRow> rejected;
    std::size_t rejected_total = 0;
    std::vector<std::string> warnings;
    std::size_t warnings_total = 0;

    static constexpr std::size_t kMaxLogged = 100;

    void reject(std::size_t file_line, std::string reason) {
        ++rejected_total;
        if (rejected.size() < kMaxLogged) rejected.push_back({file_line, std::move(reason)});
    }
    void warn(std::string message) {
        ++warnings_total;
        if (warnings.size() < kMaxLogged) warnings.push_back(std::move(message));
    }
};

struct CatalogLoadResult {
    ArtistCatalog catalog;
    LoadIssues issues;
};

struct EdgeLoadResult {
    std::vector<std::pair<std::string, std::string>> pairs; // file order, uncleaned
    LoadIssues issues;
};

namespace ingest_detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Parses a bracketed list literal of quoted strings, e.g. ['a', "b"]. Quotes
// may be single or double; backslash escapes the next character. Returns
// nullopt when the cell does not have that shape.
inline std::optional<std::vector<std::string>> parse_list_literal(const std::string& cell) {
    std::vector<std::string> items;
    std::string s = trim(cell);
    if (s.empty()) return items;
    if (s.front() != '[' || s.back() != ']') return std::nullopt;
    std::size_t i = 1;
    const std::size_t end = s.size() - 1;
    auto skip_ws = [&] {
        while (i < end && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    if (i == end) return items; // []
    for (;;) {
        skip_ws();
        if (i >= end) return std::nullopt;
        char quote = s[i];
        if (quote != '\'' && quote != '"') return std::nullopt;
        ++i;
        std::string item;
        bool closed = false;
        while (i < end) {
            char c = s[i];
            if (c == '\\' && i + 1 < end) {
                item.push_back(s[i + 1]);
                i += 2;
            } else if (c == quote) {
                closed = true;
                ++i;
                break;
            } else {
                item.push_back(c);
                ++i;
            }
        }
        if (!closed) return std::nullopt;
        items.push_back(std::move(item));
        skip_ws();
        if (i == end) return items;
        if (s[i] != ',') return std::nullopt;
        ++i;
    }
}

inline std::optional<std::vector<std::string>> split_list(const std::string& cell,
                                                          const std::string& delimiter) {
    std::vector<std::string> items;
    if (trim(cell).empty()) return items;
    std::size_t start = 0;
    for (;;) {
        std::size_t hit = cell.find(delimiter, start);
        if (hit == std::string::npos) {
            items.push_back(cell.substr(start));
            return items;
        }
        items.push_back(cell.substr(start, hit - start));
        start = hit + delimiter.size();
    }
}

inline std::optional<double> parse_number(const std::string& cell) {
    std::string s = trim(cell);
    if (s.empty()) return std::nullopt;
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) return std::nullopt;
        return v;
    } catch (...) {
        return std::nullopt;
    }
}

// Column index for a schema mapping; empty mapping means "not present".
inline std::optional<std::size_t> resolve_column(const CsvTable& t, const std::string& mapped,
                                                 const char* which_file) {
    if (mapped.empty()) return std::nullopt;
    if (!t.has_column(mapped))
        throw SchemaError(std::string(which_file) + " file missing column '" + mapped + "'");
    return t.column_index(mapped);
}

} // namespace ingest_detail

// Loads the artist catalog. Rows with the wrong field count, an empty id, or
// a duplicate id are rejected with the file line recorded. List cells that do
// not parse degrade to empty lists with a warning, so one bad cell never
// costs a whole artist.
inline CatalogLoadResult load_catalog(const std::string& path, const SchemaConfig& schema = {}) {
    using namespace ingest_detail;
    CsvTable table = read_csv(path);
    CatalogLoadResult result;
    result.issues.rows_in = table.rows.size();

    auto id_col = resolve_column(table, schema.id_column, "nodes");
    if (!id_col) throw SchemaError("id column mapping must not be empty");
    auto name_col = resolve_column(table, schema.name_column, "nodes");
    auto genres_col = resolve_column(table, schema.genres_column, "nodes");
    auto chart_col = resolve_column(table, schema.chart_hits_column, "nodes");
    auto pop_col = resolve_column(table, schema.popularity_column, "nodes");
    auto fol_col = resolve_column(table, schema.followers_column, "nodes");

    std::regex hit_re;
    try {
        hit_re = std::regex(schema.chart_hit_pattern);
    } catch (const std::regex_error& e) {
        throw SchemaError(std::string("bad chart_hit_pattern: ") + e.what());
    }

    auto parse_list = [&](const std::string& cell) {
        return schema.genre_list_delimiter.empty()
                   ? parse_list_literal(cell)
                   : split_list(cell, schema.genre_list_delimiter);
    };

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = table.row_lines[r];
        if (row.size() != table.header.size()) {
            result.issues.reject(line, "expected " + std::to_string(table.header.size()) +
                                           " fields, got " + std::to_string(row.size()));
            continue;
        }
        ArtistRecord rec;
        rec.key = trim(row[*id_col]);
        if (rec.key.empty()) {
            result.issues.reject(line, "empty id");
            continue;
        }
        if (result.catalog.contains(rec.key)) {
            result.issues.reject(line, "duplicate id '" + rec.key + "'");
            continue;
        }
        if (name_col) rec.name = row[*name_col];

        if (genres_col) {
            auto items = parse_list(row[*genres_col]);
            if (!items) {
                result.issues.warn("line " + std::to_string(line) +
                                   ": unparsable genres cell, treated as empty");
            } else {
                for (auto& item : *items) {
                    std::string g = to_lower(trim(item));
                    if (!g.empty()) rec.genres.push_back(std::move(g));
                }
                std::sort(rec.genres.begin(), rec.genres.end());
                rec.genres.erase(std::unique(rec.genres.begin(), rec.genres.end()),
                                 rec.genres.end());
            }
        }

        if (chart_col) {
            auto items = parse_list(row[*chart_col]);
            if (!items) {
                result.issues.warn("line " + std::to_string(line) +
                                   ": unparsable chart_hits cell, treated as empty");
            } else {
                for (auto& item : *items) {
                    std::smatch m;
                    std::string token = trim(item);
                    if (token.empty()) continue;
                    if (!std::regex_match(token, m, hit_re)) {
                        result.issues.warn("line " + std::to_string(line) +
                                           ": chart hit '" + token + "' does not match pattern");
                        continue;
                    }
                    unsigned long hits = 0;
                    try {
                        hits = std::stoul(m[2].str());
                    } catch (...) {
                        result.issues.warn("line " + std::to_string(line) +
                                           ": chart hit count out of range in '" + token + "'");
                        continue;
                    }
                    rec.chart_hits.emplace_back(to_lower(m[1].str()),
                                                static_cast<std::uint32_t>(hits));
                }
            }
        }

        if (pop_col) {
            rec.popularity = parse_number(row[*pop_col]);
            if (!rec.popularity && !trim(row[*pop_col]).empty())
                result.issues.warn("line " + std::to_string(line) + ": unparsable popularity");
        }
        if (fol_col) {
            rec.followers = parse_number(row[*fol_col]);
            if (!rec.followers && !trim(row[*fol_col]).empty())
                result.issues.warn("line " + std::to_string(line) + ": unparsable followers");
        }

        result.catalog.add(std::move(rec));
    }
    return result;
}

// Loads raw collaboration pairs. Simple-graph cleaning (loops, duplicates,
// unknown endpoints) is build_graph's job; this stage only enforces row shape.
inline EdgeLoadResult load_edges(const std::string& path, const SchemaConfig& schema = {}) {
    using namespace ingest_detail;
    CsvTable table = read_csv(path);
    EdgeLoadResult result;
    result.issues.rows_in = table.rows.size();

    auto src = resolve_column(table, schema.edge_source_column, "edges");
    auto dst = resolve_column(table, schema.edge_target_column, "edges");
    if (!src || !dst) throw SchemaError("edge endpoint column mappings must not be empty");

    result.pairs.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = table.row_lines[r];
        if (row.size() != table.header.size()) {
            result.issues.reject(line, "expected " + std::to_string(table.header.size()) +
                                           " fields, got " + std::to_string(row.size()));
            continue;
        }
        std::string a = trim(row[*src]);
        std::string b = trim(row[*dst]);
        if (a.empty() || b.empty()) {
            result.issues.reject(line, "empty endpoint");
            continue;
        }
        result.pairs.emplace_back(std::move(a), std::move(b));
    }
    return result;
}

// Nodes of g whose catalog record satisfies a predicate; keys absent from the
// catalog never match.
template <typename Pred>
inline NodeSet nodes_where(const Graph& g, const ArtistCatalog& catalog, Pred&& pred) {
    std::vector<NodeId> members;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const ArtistRecord* rec = catalog.find(g.key_of(v));
        if (rec && pred(*rec)) members.push_back(v);
    }
    return NodeSet::of(std::move(members), g.node_count());
}

// Artists with at least one chart hit anywhere.
inline NodeSet seed_artists(const Graph& g, const ArtistCatalog& catalog) {
    return nodes_where(g, catalog, [](const ArtistRecord& r) { return !r.chart_hits.empty(); });
}

inline NodeSet genre_nodes(const Graph& g, const ArtistCatalog& catalog, const std::string& genre) {
    std::string want = ingest_detail::to_lower(ingest_detail::trim(genre));
    return nodes_where(g, catalog, [&](const ArtistRecord& r) { return r.has_genre(want); });
}

inline NodeSet country_chart_nodes(const Graph& g, const ArtistCatalog& catalog,
                                   const std::string& country) {
    std::string want = ingest_detail::to_lower(ingest_detail::trim(country));
    return nodes_where(g, catalog, [&](const ArtistRecord& r) { return r.charted_in(want); });
}

// Genre frequencies over a set of records: count descending, ties alphabetical.
// top_n == 0 keeps everything.
inline std::vector<std::pair<std::string, std::size_t>>
genre_histogram(const std::vector<const ArtistRecord*>& records, std::size_t top_n = 0) {
    std::map<std::string, std::size_t> counts;
    for (const auto* r : records)
        for (const auto& g : r->genres) ++counts[g];
    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (top_n > 0 && out.size() > top_n) out.resize(top_n);
    return out;
}

inline std::vector<std::pair<std::string, std::size_t>>
genre_histogram(const ArtistCatalog& catalog, std::size_t top_n = 0) {
    std::vector<const ArtistRecord*> all;
    all.reserve(catalog.size());
    for (const auto& r : catalog.records()) all.push_back(&r);
    return genre_histogram(all, top_n);
}

// Histogram over the artists present in g only.
inline std::vector<std::pair<std::string, std::size_t>>
genre_histogram(const Graph& g, const ArtistCatalog& catalog, std::size_t top_n = 0) {
    std::vector<const ArtistRecord*> present;
    present.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (const auto* r = catalog.find(g.key_of(v))) present.push_back(r);
    return genre_histogram(present, top_n);
}

} // namespace smallworld
