#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hcslab/fock.hpp"
#include "hcslab/metrics.hpp"

namespace hcslab::io {

// ---- flag value parsing --------------------------------------------------------

// Radians from a decimal or a pi-rational form: "pi", "-pi/2", "0.75pi", "3pi/4".
double parse_angle(const std::string& text);

// Complex from "re,im" (or a bare real).
Complex parse_complex(const std::string& text);

// ---- deterministic text output ---------------------------------------------------

// 12 significant digits, C locale, "." decimal point; NaN prints as "nan".
std::string format_number(double value);

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;  // emitted as "# key=value"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string render_csv(const CsvTable& table);
void write_text_file(const std::string& path, const std::string& content);

// JSON mirror of a CsvTable (metadata object + columns + rows).
std::string render_json(const CsvTable& table);

// ---- self-contained SVG rendering -------------------------------------------------

struct Series {
  std::string label;
  std::vector<double> y;
};

// Line plot of one or more series over a shared x axis.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<double>& x,
                          const std::vector<Series>& series);

// Heatmap of a Wigner grid on the symmetric diverging palette pinned to
// [-2/pi, 2/pi].
std::string svg_heatmap(const WignerGrid& grid, const std::string& title);

}  // namespace hcslab::io
