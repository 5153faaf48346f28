#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace nisqtopo {

/// Empty cells (std::monostate) are written as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);

class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<Cell> row);

  /// Header line then one line per row, LF endings.
  void write_csv(std::ostream& out) const;

  /// {"meta": meta, "columns": [...], "rows": [{column: value, ...}, ...]}
  nlohmann::json to_json(const nlohmann::json& meta) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

} // namespace nisqtopo
