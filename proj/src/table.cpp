#include "pathsim/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pathsim/error.hpp"
#include "pathsim/scenario.hpp"

namespace pathsim {

const char* to_string(ColumnKind kind) noexcept {
    switch (kind) {
        case ColumnKind::continuous: return "continuous";
        case ColumnKind::binary: return "binary";
        case ColumnKind::categorical: return "categorical";
        case ColumnKind::indicator: return "indicator";
    }
    return "unknown";
}

void DataTable::add_column(Column column) {
    if (has(column.name)) throw DataError("duplicate column \"" + column.name + "\"");
    if (!columns_.empty() && column.values.size() != n_rows_)
        throw DataError("column \"" + column.name + "\" has " + std::to_string(column.values.size()) +
                        " rows, table has " + std::to_string(n_rows_));
    if (column.kind == ColumnKind::binary || column.kind == ColumnKind::indicator) {
        for (double v : column.values)
            if (v != 0.0 && v != 1.0 && !std::isnan(v))
                throw DataError("column \"" + column.name + "\" is binary but holds " + std::to_string(v));
    }
    n_rows_ = column.values.size();
    columns_.push_back(std::move(column));
}

void DataTable::add_column(std::string name, std::vector<double> values, ColumnKind kind) {
    Column c;
    c.name = std::move(name);
    c.kind = kind;
    c.values = std::move(values);
    add_column(std::move(c));
}

void DataTable::remove_column(std::string_view name) {
    columns_.erase(columns_.begin() + static_cast<long>(index(name)));
    if (columns_.empty()) n_rows_ = 0;
}

bool DataTable::has(std::string_view name) const noexcept {
    return std::any_of(columns_.begin(), columns_.end(), [&](const Column& c) { return c.name == name; });
}

std::size_t DataTable::index(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name) return i;
    throw DataError("missing column \"" + std::string(name) + "\"");
}

const Column& DataTable::column(std::string_view name) const { return columns_[index(name)]; }

std::span<const double> DataTable::values(std::string_view name) const { return columns_[index(name)].values; }

std::vector<double>& DataTable::values_mut(std::string_view name) { return columns_[index(name)].values; }

std::vector<std::string> DataTable::names() const {
    std::vector<std::string> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) out.push_back(c.name);
    return out;
}

DataTable DataTable::select_rows(std::span<const std::size_t> rows) const {
    DataTable out;
    for (const auto& c : columns_) {
        Column copy;
        copy.name = c.name;
        copy.kind = c.kind;
        copy.levels = c.levels;
        copy.group = c.group;
        copy.values.reserve(rows.size());
        for (auto r : rows) {
            if (r >= n_rows_) throw DataError("select_rows: row index out of range");
            copy.values.push_back(c.values[r]);
        }
        out.columns_.push_back(std::move(copy));
    }
    out.n_rows_ = columns_.empty() ? 0 : rows.size();
    return out;
}

DataTable one_hot(const DataTable& table, std::string_view column) {
    const Column& src = table.column(column);
    if (src.kind != ColumnKind::categorical)
        throw DataError("one_hot: column \"" + src.name + "\" is not categorical");
    const std::size_t k = src.levels.size();
    if (k < 2) throw DataError("one_hot: column \"" + src.name + "\" needs at least 2 levels");
    for (double code : src.values) {
        if (!(code >= 0.0 && code < static_cast<double>(k)) || code != std::floor(code))
            throw DataError("one_hot: column \"" + src.name + "\" holds a value outside its declared levels");
    }

    DataTable out;
    for (const auto& c : table.columns()) {
        if (c.name != src.name) {
            out.add_column(c);
            continue;
        }
        for (std::size_t level = 1; level < k; ++level) {
            Column ind;
            ind.name = src.name + "=" + src.levels[level];
            ind.kind = ColumnKind::indicator;
            ind.group = src.name;
            ind.values.reserve(src.values.size());
            for (double code : src.values) ind.values.push_back(static_cast<std::size_t>(code) == level ? 1.0 : 0.0);
            out.add_column(std::move(ind));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string format_number(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string quote_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Splits one CSV record; handles quoted fields (no embedded newlines).
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw DataError("csv line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty() || s == "NA" || s == "nan" || s == "NaN") {
        out = std::numeric_limits<double>::quiet_NaN();
        return true;
    }
    if (s == "Inf" || s == "inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (s == "-Inf" || s == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

void write_csv(const DataTable& table, std::ostream& out) {
    const auto& cols = table.columns();
    for (std::size_t j = 0; j < cols.size(); ++j) out << (j ? "," : "") << quote_field(cols[j].name);
    out << '\n';
    for (std::size_t i = 0; i < table.n_rows(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (j) out << ',';
            const Column& c = cols[j];
            const double v = c.values[i];
            if (c.kind == ColumnKind::categorical && v >= 0.0 && v < static_cast<double>(c.levels.size()))
                out << quote_field(c.levels[static_cast<std::size_t>(v)]);
            else
                out << format_number(v);
        }
        out << '\n';
    }
}

std::string to_csv(const DataTable& table) {
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

DataTable read_csv(std::istream& in, const ScenarioSpec* hint) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };
    if (!next_line()) throw DataError("csv: empty input");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = split_record(line, line_no);
    const std::size_t k = header.size();
    std::vector<std::vector<std::string>> cells(k);
    while (next_line()) {
        if (line.empty()) continue;
        auto fields = split_record(line, line_no);
        if (fields.size() != k)
            throw DataError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(k) + " fields, found " +
                            std::to_string(fields.size()));
        for (std::size_t j = 0; j < k; ++j) cells[j].push_back(std::move(fields[j]));
    }

    DataTable table;
    for (std::size_t j = 0; j < k; ++j) {
        Column col;
        col.name = header[j];
        const VariableSpec* declared = hint ? hint->find(col.name) : nullptr;
        const auto& raw = cells[j];

        if (declared && declared->kind == Kind::categorical) {
            col.kind = ColumnKind::categorical;
            col.levels = declared->levels;
            for (const auto& s : raw) {
                const auto it = std::find(col.levels.begin(), col.levels.end(), s);
                if (it == col.levels.end())
                    throw DataError("csv column \"" + col.name + "\": unknown level \"" + s + "\"");
                col.values.push_back(static_cast<double>(it - col.levels.begin()));
            }
            table.add_column(std::move(col));
            continue;
        }

        bool numeric = true;
        std::vector<double> values(raw.size());
        for (std::size_t i = 0; i < raw.size() && numeric; ++i) numeric = parse_number(raw[i], values[i]);

        if (!numeric) {
            if (declared)
                throw DataError("csv column \"" + col.name + "\": non-numeric value for " + to_string(declared->kind) +
                                " variable");
            col.kind = ColumnKind::categorical;
            for (const auto& s : raw) {
                auto it = std::find(col.levels.begin(), col.levels.end(), s);
                if (it == col.levels.end()) {
                    col.levels.push_back(s);
                    it = col.levels.end() - 1;
                }
                col.values.push_back(static_cast<double>(it - col.levels.begin()));
            }
        } else {
            col.values = std::move(values);
            if (declared) {
                col.kind = declared->kind == Kind::binary ? ColumnKind::binary : ColumnKind::continuous;
            } else {
                const bool zero_one =
                    !col.values.empty() &&
                    std::all_of(col.values.begin(), col.values.end(), [](double v) { return v == 0.0 || v == 1.0; });
                col.kind = zero_one ? ColumnKind::binary : ColumnKind::continuous;
            }
            if (const auto eq = col.name.find('='); col.kind == ColumnKind::binary && eq != std::string::npos) {
                col.kind = ColumnKind::indicator;
                col.group = col.name.substr(0, eq);
            }
        }
        table.add_column(std::move(col));
    }
    return table;
}

DataTable read_csv_file(const std::string& path, const ScenarioSpec* hint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open csv file " + path);
    return read_csv(in, hint);
}

}  // namespace pathsim
