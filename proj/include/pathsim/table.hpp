#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathsim {

struct ScenarioSpec;

enum class ColumnKind { continuous, binary, categorical, indicator };

const char* to_string(ColumnKind kind) noexcept;

/// A named column. Categorical values are level codes 0..k-1 into `levels`;
/// indicator columns come from one_hot and name their source in `group`.
struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::continuous;
    std::vector<double> values;
    std::vector<std::string> levels;
    std::string group;

    bool operator==(const Column&) const = default;
};

/// Rectangular table of named columns, kept in insertion order.
class DataTable {
public:
    DataTable() = default;

    std::size_t n_rows() const noexcept { return n_rows_; }
    std::size_t n_cols() const noexcept { return columns_.size(); }

    /// Appends a column. Throws DataError on a duplicate name, a length that
    /// differs from existing columns, or a binary/indicator value outside {0, 1}.
    void add_column(Column column);
    /// Convenience for continuous columns.
    void add_column(std::string name, std::vector<double> values, ColumnKind kind = ColumnKind::continuous);
    void remove_column(std::string_view name);

    bool has(std::string_view name) const noexcept;
    const Column& column(std::string_view name) const;
    std::span<const double> values(std::string_view name) const;
    /// Mutable access for in-place edits (tests use this to corrupt data).
    std::vector<double>& values_mut(std::string_view name);

    const std::vector<Column>& columns() const noexcept { return columns_; }
    std::vector<std::string> names() const;

    /// Copy with the given rows (repeats allowed) of every column.
    DataTable select_rows(std::span<const std::size_t> rows) const;

    bool operator==(const DataTable&) const = default;

private:
    std::size_t index(std::string_view name) const;

    std::vector<Column> columns_;
    std::size_t n_rows_ = 0;
};

/// Replaces categorical `column` with k-1 indicator columns `column=level`
/// (reference = first level), inserted where the original column was.
/// Throws DataError for non-categorical columns, fewer than 2 levels, or
/// codes that name no declared level.
DataTable one_hot(const DataTable& table, std::string_view column);

/// CSV with a header row, `,` separator, '.' decimal point and shortest
/// round-trip number formatting. Categorical values are written as labels.
void write_csv(const DataTable& table, std::ostream& out);
std::string to_csv(const DataTable& table);

/// Reads a CSV table. Column kinds come from `hint` for declared variables
/// (categorical labels must be declared levels); other columns are inferred:
/// non-numeric text -> categorical (levels in order of first appearance),
/// all values in {0, 1} -> binary, otherwise continuous. Empty cells and
/// "NA"/"nan" read as NaN.
DataTable read_csv(std::istream& in, const ScenarioSpec* hint = nullptr);
DataTable read_csv_file(const std::string& path, const ScenarioSpec* hint = nullptr);

}  // namespace pathsim
