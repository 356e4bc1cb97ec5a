#pragma once

#include <cstddef>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Minimal CSV reader/writer. Reads quoted fields with "" escapes and embedded
// newlines, tolerates CRLF, and exposes the header as a name -> column map.

namespace smallworld {

struct CsvTable {
    std::vector<std::string> header;
    std::unordered_map<std::string, std::size_t> column;
    std::vector<std::vector<std::string>> rows; // excludes header
    // 1-based line numbers of the first physical line of each row, for messages.
    std::vector<std::size_t> row_lines;

    bool has_column(const std::string& name) const { return column.count(name) != 0; }
    std::size_t column_index(const std::string& name) const {
        auto it = column.find(name);
        if (it == column.end()) throw std::out_of_range("no such column: " + name);
        return it->second;
    }
};

namespace csv_detail {

// Parses one record starting at pos; returns false at end of input.
// Handles quoted fields spanning physical lines.
inline bool parse_record(const std::string& text, std::size_t& pos, std::size_t& line,
                         std::vector<std::string>& out) {
    if (pos >= text.size()) return false;
    out.clear();
    std::string field;
    bool in_quotes = false;
    for (;;) {
        if (pos >= text.size()) {
            out.push_back(std::move(field));
            return true;
        }
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    pos += 2;
                } else {
                    in_quotes = false;
                    ++pos;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
                ++pos;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            ++pos;
            break;
        case ',':
            out.push_back(std::move(field));
            field.clear();
            ++pos;
            break;
        case '\r':
            if (pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
            [[fallthrough]];
        case '\n':
            ++pos;
            ++line;
            out.push_back(std::move(field));
            return true;
        default:
            field.push_back(c);
            ++pos;
        }
    }
}

} // namespace csv_detail

// Reads a whole CSV file. Rows whose field count differs from the header are
// kept; callers decide how to treat them (the ingest layer rejects and logs).
inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    CsvTable table;
    std::size_t pos = 0, line = 1;
    std::vector<std::string> record;
    if (!csv_detail::parse_record(text, pos, line, record))
        throw std::runtime_error("empty CSV file: " + path);
    // Strip a UTF-8 BOM if the producer wrote one.
    if (!record.empty() && record[0].rfind("\xEF\xBB\xBF", 0) == 0)
        record[0].erase(0, 3);
    table.header = record;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        table.column.emplace(table.header[i], i);

    std::size_t record_line = line;
    while (csv_detail::parse_record(text, pos, line, record)) {
        if (record.size() == 1 && record[0].empty()) {
            record_line = line; // blank physical line
            continue;
        }
        table.rows.push_back(record);
        table.row_lines.push_back(record_line);
        record_line = line;
    }
    return table;
}

inline std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(fields[i]);
    }
    os << '\n';
}

} // namespace smallworld
