#include "hcslab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hcslab/version.hpp"

namespace hcslab::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double_strict(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
  return v;
}

}  // namespace

double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("parse_angle: empty value");
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_double_strict(s, "parse_angle");
  double coef = 1.0;
  const std::string head = trim(s.substr(0, pos));
  if (head == "-")
    coef = -1.0;
  else if (head == "+" || head.empty())
    coef = 1.0;
  else
    coef = parse_double_strict(head, "parse_angle");
  double divisor = 1.0;
  const std::string tail = trim(s.substr(pos + 2));
  if (!tail.empty()) {
    if (tail.front() != '/')
      throw std::invalid_argument("parse_angle: cannot parse '" + text + "'");
    divisor = parse_double_strict(trim(tail.substr(1)), "parse_angle");
    if (divisor == 0.0) throw std::invalid_argument("parse_angle: division by zero");
  }
  return coef * std::numbers::pi / divisor;
}

Complex parse_complex(const std::string& text) {
  const std::string s = trim(text);
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_double_strict(s, "parse_complex"), 0.0};
  return {parse_double_strict(trim(s.substr(0, comma)), "parse_complex"),
          parse_double_strict(trim(s.substr(comma + 1)), "parse_complex")};
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string render_csv(const CsvTable& table) {
  std::ostringstream os;
  os << "# tool=" << kToolName << " " << kToolVersion << "\n";
  for (const auto& [key, value] : table.metadata) os << "# " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << "\n";
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string render_json(const CsvTable& table) {
  nlohmann::ordered_json j;
  j["tool"] = std::string(kToolName) + " " + kToolVersion;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) meta[key] = value;
  j["metadata"] = std::move(meta);
  j["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double v : row) {
      if (std::isnan(v))
        r.push_back(nullptr);
      else
        r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

// ---- SVG ----------------------------------------------------------------------

namespace {

constexpr int kPlotW = 860;
constexpr int kPlotH = 540;
constexpr int kMarginL = 70, kMarginR = 170, kMarginT = 40, kMarginB = 50;

const char* kPalette[] = {"#1b6ca8", "#d1495b", "#3a7d44", "#8e5fa8", "#c88a1e",
                          "#3b3b3b", "#15a3a3", "#a84f1b"};

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Round tick spacing to 1/2/5 * 10^k covering [lo, hi] with ~6 intervals.
std::vector<double> nice_ticks(double lo, double hi) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + 0.5 * step; t += step) ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return ticks;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void escape_into(std::ostringstream& os, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '<': os << "&lt;"; break;
      case '>': os << "&gt;"; break;
      case '&': os << "&amp;"; break;
      default: os << c;
    }
  }
}

// White-to-blue for negative, white-to-red for positive, pinned to +-2/pi.
std::string diverging_color(double w) {
  const double t = std::clamp(w / (2.0 / std::numbers::pi), -1.0, 1.0);
  int r, g, b;
  if (t >= 0.0) {
    r = static_cast<int>(std::lround(255 + t * (178 - 255)));
    g = static_cast<int>(std::lround(255 + t * (24 - 255)));
    b = static_cast<int>(std::lround(255 + t * (43 - 255)));
  } else {
    r = static_cast<int>(std::lround(255 - t * (33 - 255)));
    g = static_cast<int>(std::lround(255 - t * (102 - 255)));
    b = static_cast<int>(std::lround(255 - t * (172 - 255)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<double>& x,
                          const std::vector<Series>& series) {
  if (x.empty() || series.empty())
    throw std::invalid_argument("svg_line_plot: nothing to draw");
  double x_lo = x.front(), x_hi = x.front(), y_lo = 0.0, y_hi = 0.0;
  bool first = true;
  for (double v : x) {
    x_lo = std::min(x_lo, v);
    x_hi = std::max(x_hi, v);
  }
  for (const Series& s : series) {
    if (s.y.size() != x.size())
      throw std::invalid_argument("svg_line_plot: series length mismatch");
    for (double v : s.y) {
      if (std::isnan(v)) continue;
      if (first) {
        y_lo = y_hi = v;
        first = false;
      }
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (first) throw std::invalid_argument("svg_line_plot: all values are NaN");
  if (y_hi - y_lo < 1e-12) {
    y_lo -= 0.5;
    y_hi += 0.5;
  } else {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }
  const double iw = kPlotW - kMarginL - kMarginR;
  const double ih = kPlotH - kMarginT - kMarginB;
  const auto sx = [&](double v) { return kMarginL + (v - x_lo) / (x_hi - x_lo) * iw; };
  const auto sy = [&](double v) { return kMarginT + (y_hi - v) / (y_hi - y_lo) * ih; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotW << "\" height=\""
     << kPlotH << "\" viewBox=\"0 0 " << kPlotW << " " << kPlotH << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kPlotW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">";
  escape_into(os, title);
  os << "</text>\n";

  for (double t : nice_ticks(x_lo, x_hi)) {
    os << "<line x1=\"" << fmt2(sx(t)) << "\" y1=\"" << fmt2(kMarginT) << "\" x2=\""
       << fmt2(sx(t)) << "\" y2=\"" << fmt2(kMarginT + ih)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
       << "<text x=\"" << fmt2(sx(t)) << "\" y=\"" << fmt2(kMarginT + ih + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(t) << "</text>\n";
  }
  for (double t : nice_ticks(y_lo, y_hi)) {
    os << "<line x1=\"" << fmt2(kMarginL) << "\" y1=\"" << fmt2(sy(t)) << "\" x2=\""
       << fmt2(kMarginL + iw) << "\" y2=\"" << fmt2(sy(t))
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
       << "<text x=\"" << fmt2(kMarginL - 6) << "\" y=\"" << fmt2(sy(t) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(t)
       << "</text>\n";
  }
  if (y_lo < 0.0 && y_hi > 0.0)
    os << "<line x1=\"" << fmt2(kMarginL) << "\" y1=\"" << fmt2(sy(0.0)) << "\" x2=\""
       << fmt2(kMarginL + iw) << "\" y2=\"" << fmt2(sy(0.0))
       << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  os << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << fmt2(iw)
     << "\" height=\"" << fmt2(ih) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    bool gap = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::isnan(series[s].y[i])) {
        gap = true;
        continue;
      }
      if (!gap) os << " ";
      os << fmt2(sx(x[i])) << "," << fmt2(sy(series[s].y[i]));
      gap = false;
    }
    os << "\"/>\n";
    const double ly = kMarginT + 16 + 18.0 * s;
    os << "<line x1=\"" << kPlotW - kMarginR + 12 << "\" y1=\"" << fmt2(ly - 4) << "\" x2=\""
       << kPlotW - kMarginR + 36 << "\" y2=\"" << fmt2(ly - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"1.8\"/>\n"
       << "<text x=\"" << kPlotW - kMarginR + 42 << "\" y=\"" << fmt2(ly)
       << "\" font-family=\"sans-serif\" font-size=\"12\">";
    escape_into(os, series[s].label);
    os << "</text>\n";
  }

  os << "<text x=\"" << kMarginL + iw / 2 << "\" y=\"" << kPlotH - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">";
  escape_into(os, x_label);
  os << "</text>\n"
     << "<text x=\"18\" y=\"" << kMarginT + ih / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        "transform=\"rotate(-90 18 "
     << kMarginT + ih / 2 << ")\">";
  escape_into(os, y_label);
  os << "</text>\n</svg>\n";
  return os.str();
}

std::string svg_heatmap(const WignerGrid& grid, const std::string& title) {
  const int image = 640;
  const int margin_l = 60, margin_t = 40, margin_b = 50, margin_r = 90;
  const int width = image + margin_l + margin_r;
  const int height = image + margin_t + margin_b;
  const double cw = double(image) / grid.nx;
  const double ch = double(image) / grid.np;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">";
  escape_into(os, title);
  os << "</text>\n";
  for (int ix = 0; ix < grid.nx; ++ix)
    for (int ip = 0; ip < grid.np; ++ip) {
      // p axis points up: row 0 of the image is the largest p
      const double px = margin_l + ix * cw;
      const double py = margin_t + (grid.np - 1 - ip) * ch;
      os << "<rect x=\"" << fmt2(px) << "\" y=\"" << fmt2(py) << "\" width=\"" << fmt2(cw + 0.5)
         << "\" height=\"" << fmt2(ch + 0.5) << "\" fill=\"" << diverging_color(grid.at(ix, ip))
         << "\"/>\n";
    }
  os << "<rect x=\"" << margin_l << "\" y=\"" << margin_t << "\" width=\"" << image
     << "\" height=\"" << image << "\" fill=\"none\" stroke=\"black\"/>\n";
  // axis extremes
  os << "<text x=\"" << margin_l << "\" y=\"" << margin_t + image + 18
     << "\" font-family=\"sans-serif\" font-size=\"11\">x=" << tick_label(grid.bounds.x_min)
     << "</text>\n"
     << "<text x=\"" << margin_l + image << "\" y=\"" << margin_t + image + 18
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">x="
     << tick_label(grid.bounds.x_max) << "</text>\n"
     << "<text x=\"" << margin_l - 6 << "\" y=\"" << margin_t + image
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">p="
     << tick_label(grid.bounds.p_min) << "</text>\n"
     << "<text x=\"" << margin_l - 6 << "\" y=\"" << margin_t + 10
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">p="
     << tick_label(grid.bounds.p_max) << "</text>\n";
  // colorbar pinned to [-2/pi, 2/pi]
  const int bar_x = margin_l + image + 24, bar_w = 18;
  const int steps = 64;
  const double two_over_pi = 2.0 / std::numbers::pi;
  for (int i = 0; i < steps; ++i) {
    const double v = two_over_pi * (1.0 - 2.0 * (i + 0.5) / steps);
    os << "<rect x=\"" << bar_x << "\" y=\"" << fmt2(margin_t + image * double(i) / steps)
       << "\" width=\"" << bar_w << "\" height=\"" << fmt2(image / double(steps) + 0.5)
       << "\" fill=\"" << diverging_color(v) << "\"/>\n";
  }
  os << "<rect x=\"" << bar_x << "\" y=\"" << margin_t << "\" width=\"" << bar_w
     << "\" height=\"" << image << "\" fill=\"none\" stroke=\"black\"/>\n"
     << "<text x=\"" << bar_x + bar_w + 4 << "\" y=\"" << margin_t + 10
     << "\" font-family=\"sans-serif\" font-size=\"11\">2/&#960;</text>\n"
     << "<text x=\"" << bar_x + bar_w + 4 << "\" y=\"" << margin_t + image / 2 + 4
     << "\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n"
     << "<text x=\"" << bar_x + bar_w + 4 << "\" y=\"" << margin_t + image
     << "\" font-family=\"sans-serif\" font-size=\"11\">-2/&#960;</text>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace hcslab::io
