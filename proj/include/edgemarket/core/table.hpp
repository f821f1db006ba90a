#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace edgemarket {

using Cell = std::variant<std::string, std::int64_t, double>;

// Column-named result table shared by the CSV writer and the SVG emitter.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
  bool empty() const { return rows.empty(); }
  bool operator==(const Table&) const = default;
};

/// Shortest round-trippable text for a double ("%.17g" fallback), '.' as
/// decimal separator regardless of locale.
std::string format_number(double value);
std::string format_cell(const Cell& cell);
double cell_as_double(const Cell& cell);

/// RFC-4180-ish: header row always present, '\n' line endings, fields with
/// commas or quotes are quoted.
std::string to_csv(const Table& table);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace edgemarket
