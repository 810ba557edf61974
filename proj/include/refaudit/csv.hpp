#pragma once

// Minimal RFC 4180 style CSV reading and writing, plus the decimal
// formatting shared by every report.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "refaudit/error.hpp"

namespace refaudit {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

/// Splits on `sep`, trimming each piece and dropping empty ones.
inline std::vector<std::string> split_list(std::string_view s, char sep = ';') {
    std::vector<std::string> out;
    while (true) {
        auto pos = s.find(sep);
        auto piece = trim(s.substr(0, pos));
        if (!piece.empty()) out.emplace_back(piece);
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

using ColumnIndex = std::map<std::string, std::size_t, std::less<>>;

class CsvRow {
public:
    CsvRow(std::shared_ptr<const ColumnIndex> columns, std::vector<std::string> cells, std::size_t line)
        : columns_(std::move(columns)), cells_(std::move(cells)), line_(line) {}

    std::size_t line() const noexcept { return line_; }

    /// Cell by column name; an absent trailing cell reads as empty.
    std::string_view operator[](std::string_view column) const {
        auto it = columns_->find(column);
        if (it == columns_->end()) throw InputError("unknown column '" + std::string(column) + "'");
        return it->second < cells_.size() ? trim(cells_[it->second]) : std::string_view{};
    }

private:
    std::shared_ptr<const ColumnIndex> columns_;
    std::vector<std::string> cells_;
    std::size_t line_;
};

class CsvTable {
public:
    const std::string& source() const noexcept { return source_; }
    const std::vector<CsvRow>& rows() const noexcept { return rows_; }

    /// Parses `in`; the header row must name every column in `required`.
    static CsvTable parse(std::istream& in, std::string source, const std::vector<std::string>& required) {
        CsvTable table;
        table.source_ = std::move(source);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);

        std::vector<std::vector<std::string>> records;
        std::vector<std::size_t> record_lines;
        table.split_records(text, records, record_lines);
        if (records.empty()) throw InputError(table.source_ + ": missing header row");

        auto columns = std::make_shared<ColumnIndex>();
        for (std::size_t i = 0; i < records.front().size(); ++i)
            columns->emplace(std::string(trim(records.front()[i])), i);
        for (const auto& name : required)
            if (!columns->contains(name))
                throw InputError(table.source_ + ":1: header lacks column '" + name + "'");

        table.rows_.reserve(records.size() - 1);
        for (std::size_t r = 1; r < records.size(); ++r) {
            if (records[r].size() > columns->size())
                throw InputError(table.location(record_lines[r]) + ": too many fields");
            table.rows_.emplace_back(columns, std::move(records[r]), record_lines[r]);
        }
        return table;
    }

    static CsvTable read(const std::string& path, const std::vector<std::string>& required) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open '" + path + "'");
        return parse(in, path, required);
    }

    std::string location(std::size_t line) const { return source_ + ":" + std::to_string(line); }

private:
    CsvTable() = default;

    void split_records(const std::string& text, std::vector<std::vector<std::string>>& records,
                       std::vector<std::size_t>& lines) const {
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        bool any = false;
        std::size_t line = 1;
        std::size_t record_line = 1;
        auto end_record = [&] {
            fields.push_back(std::move(field));
            field.clear();
            bool blank = fields.size() == 1 && trim(fields.front()).empty();
            if (!blank) {
                records.push_back(std::move(fields));
                lines.push_back(record_line);
            }
            fields.clear();
            any = false;
        };
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < text.size() && text[i + 1] == '"') {
                        field.push_back('"');
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    if (c == '\n') ++line;
                    field.push_back(c);
                }
                continue;
            }
            if (!any) record_line = line;
            any = true;
            if (c == '"' && trim(field).empty()) {
                field.clear();
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n') {
                end_record();
                ++line;
            } else {
                field.push_back(c);
            }
        }
        if (quoted) throw InputError(location(record_line) + ": unterminated quoted field");
        if (any) end_record();
    }

    std::string source_;
    std::vector<CsvRow> rows_;
};

// ---------------------------------------------------------------------------
// Scalar parsing
// ---------------------------------------------------------------------------

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

inline bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

/// Fixed-point decimal with `digits` fractional digits.
inline std::string format_fixed(double value, int digits = 6) {
    if (value == 0.0) value = 0.0; // no "-0.000000"
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

/// Integer percent, halves rounded away from zero.
inline long round_percent(double pct) { return std::lround(pct); }

inline double percent(double part, double whole) { return whole > 0 ? 100.0 * part / whole : 0.0; }

inline std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) { row(header); }

    CsvWriter& row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_escape(cells[i]);
        }
        out_ << '\n';
        return *this;
    }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

inline std::string join(const std::vector<std::string>& items, std::string_view sep = ";") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

} // namespace refaudit
