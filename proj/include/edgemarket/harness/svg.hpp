#pragma once

#include <string>

#include "edgemarket/core/table.hpp"

namespace edgemarket::harness {

enum class ChartKind { line, bar };

// Line: one polyline per distinct value of `series_column`, x/y from the named
// columns. Bar: one bar (and legend entry) per row, labelled by
// `series_column`, height from `y_column`; `x_column` is ignored.
struct ChartSpec {
  ChartKind kind = ChartKind::line;
  std::string title;
  std::string x_column;
  std::string y_column;
  std::string series_column;
};

/// Self-contained SVG text; throws std::invalid_argument on an empty table.
std::string emit_svg(const Table& table, const ChartSpec& spec);

}  // namespace edgemarket::harness
