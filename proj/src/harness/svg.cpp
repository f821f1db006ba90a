#include "edgemarket/harness/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace edgemarket::harness {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
  double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

Range padded(double lo, double hi) {
  if (hi - lo < 1e-12) {
    const double pad = std::max(1.0, std::abs(lo) * 0.1);
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

std::string header(const ChartSpec& spec) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth) + "\" height=\"" +
                  fixed(kHeight) + "\" viewBox=\"0 0 " + fixed(kWidth) + " " + fixed(kHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(kWidth) + "\" height=\"" + fixed(kHeight) + "\" fill=\"white\"/>\n";
  s += "<text x=\"" + fixed(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" + escape(spec.title) + "</text>\n";
  return s;
}

std::string axes(const Range& xr, const Range& yr, const std::string& xlabel, const std::string& ylabel,
                 bool x_ticks) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  std::string s;
  s += "<line x1=\"" + fixed(x0) + "\" y1=\"" + fixed(y0) + "\" x2=\"" + fixed(x1) + "\" y2=\"" + fixed(y0) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fixed(x0) + "\" y1=\"" + fixed(y0) + "\" x2=\"" + fixed(x0) + "\" y2=\"" + fixed(y1) +
       "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    const double yp = yr.map(yv, y0, y1);
    s += "<text x=\"" + fixed(x0 - 6) + "\" y=\"" + fixed(yp + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(yv) + "</text>\n";
    if (x_ticks) {
      const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
      const double xp = xr.map(xv, x0, x1);
      s += "<text x=\"" + fixed(xp) + "\" y=\"" + fixed(y0 + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(xv) + "</text>\n";
    }
  }
  s += "<text class=\"axis-label\" x=\"" + fixed((x0 + x1) / 2) + "\" y=\"" + fixed(kHeight - 18) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(xlabel) + "</text>\n";
  s += "<text class=\"axis-label\" x=\"18\" y=\"" + fixed((y0 + y1) / 2) + "\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " + fixed((y0 + y1) / 2) + ")\">" +
       escape(ylabel) + "</text>\n";
  return s;
}

std::string legend_entry(std::size_t i, const std::string& name, const char* color) {
  const double x = kWidth - kRight + 16;
  const double y = kTop + 10 + 20.0 * static_cast<double>(i);
  return "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(y - 9) + "\" width=\"12\" height=\"12\" fill=\"" + color +
         "\"/>\n<text class=\"legend\" x=\"" + fixed(x + 18) + "\" y=\"" + fixed(y + 1) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(name) + "</text>\n";
}

std::string line_chart(const Table& table, const ChartSpec& spec) {
  const std::size_t cx = table.column_index(spec.x_column);
  const std::size_t cy = table.column_index(spec.y_column);
  const std::size_t cs = table.column_index(spec.series_column);

  std::vector<std::string> names;
  std::vector<std::vector<std::pair<double, double>>> series;
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& row : table.rows) {
    const std::string name = format_cell(row[cs]);
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.push_back(name);
      series.emplace_back();
      it = names.end() - 1;
    }
    const double x = cell_as_double(row[cx]);
    const double y = cell_as_double(row[cy]);
    series[static_cast<std::size_t>(it - names.begin())].emplace_back(x, y);
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  const Range xr = padded(xlo, xhi);
  const Range yr = padded(std::min(ylo, 0.0), yhi);

  std::string s = header(spec) + axes(xr, yr, spec.x_column, spec.y_column, true);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % kPalette.size()];
    s += "<g class=\"series\" data-name=\"" + escape(names[k]) + "\">\n";
    if (series[k].size() > 1) {
      s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < series[k].size(); ++i) {
        if (i) s += ' ';
        s += fixed(xr.map(series[k][i].first, x0, x1)) + "," + fixed(yr.map(series[k][i].second, y0, y1));
      }
      s += "\"/>\n";
    }
    for (const auto& [x, y] : series[k]) {
      s += "<circle class=\"marker\" cx=\"" + fixed(xr.map(x, x0, x1)) + "\" cy=\"" + fixed(yr.map(y, y0, y1)) +
           "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }
    s += "</g>\n";
    s += legend_entry(k, names[k], color);
  }
  s += "</svg>\n";
  return s;
}

std::string bar_chart(const Table& table, const ChartSpec& spec) {
  const std::size_t cy = table.column_index(spec.y_column);
  const std::size_t cs = table.column_index(spec.series_column);
  double yhi = 0.0, ylo = 0.0;
  for (const auto& row : table.rows) {
    yhi = std::max(yhi, cell_as_double(row[cy]));
    ylo = std::min(ylo, cell_as_double(row[cy]));
  }
  const Range yr = padded(ylo, yhi);
  std::string s = header(spec) + axes({0.0, 1.0}, yr, spec.series_column, spec.y_column, false);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  const double slot = (x1 - x0) / static_cast<double>(table.rows.size());
  const double base = yr.map(0.0, y0, y1);
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const char* color = kPalette[k % kPalette.size()];
    const std::string name = format_cell(table.rows[k][cs]);
    const double top = yr.map(cell_as_double(table.rows[k][cy]), y0, y1);
    const double left = x0 + slot * (static_cast<double>(k) + 0.2);
    s += "<g class=\"series\" data-name=\"" + escape(name) + "\">\n";
    s += "<rect class=\"marker\" x=\"" + fixed(left) + "\" y=\"" + fixed(std::min(top, base)) + "\" width=\"" +
         fixed(slot * 0.6) + "\" height=\"" + fixed(std::abs(base - top)) + "\" fill=\"" + color + "\"/>\n";
    s += "<text x=\"" + fixed(left + slot * 0.3) + "\" y=\"" + fixed(y0 + 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + escape(name) + "</text>\n";
    s += "</g>\n";
    s += legend_entry(k, name, color);
  }
  s += "</svg>\n";
  return s;
}

}  // namespace

std::string emit_svg(const Table& table, const ChartSpec& spec) {
  if (table.empty()) throw std::invalid_argument("emit_svg: empty table");
  return spec.kind == ChartKind::line ? line_chart(table, spec) : bar_chart(table, spec);
}

}  // namespace edgemarket::harness
