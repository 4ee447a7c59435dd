#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qotto {

/// Empty cells mark quantities undefined at that grid point (e.g. the
/// efficiency of a non-engine point).
using Cell = std::variant<std::monostate, double, std::string>;

/// Rectangular table of sweep results.
class SweepTable {
 public:
  SweepTable() = default;
  explicit SweepTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<Cell> row);
  void add_metadata(std::string key, std::string value);

  std::size_t column_index(const std::string& name) const;
  const Cell& at(std::size_t row, const std::string& column) const;
  /// Numeric cell value; throws std::bad_variant_access for other kinds.
  double number(std::size_t row, const std::string& column) const;
  bool is_null(std::size_t row, const std::string& column) const;

  /// Header row then one record per row; comma-delimited, '\n' line ends,
  /// numbers with 17 significant digits, empty field for null.
  std::string to_csv() const;
  /// {"metadata": {...}, "columns": [...], "rows": [[...], ...]} with null
  /// for empty cells.
  std::string to_json(int indent = 2) const;

  /// Inverse of to_csv (metadata is not carried by CSV).
  static SweepTable from_csv(const std::string& text);

  friend bool operator==(const SweepTable&, const SweepTable&) = default;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Shortest decimal text that round-trips, capped at 17 significant digits.
std::string format_number(double v);

}  // namespace qotto
