#include "semnoma/results.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <vector>

#include "semnoma/errors.hpp"

namespace semnoma {

namespace {

std::string sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string px(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};

}  // namespace

std::string format_results_csv(std::span<const PointResult> rows) {
  std::string out = kResultsHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += sig9(r.axis_value);
    out += ',';
    out += to_string(r.scheme);
    out += ',';
    out += sig9(r.ergodic_secondary);
    out += ',';
    out += sig9(r.ergodic_primary);
    out += ',';
    out += sig9(r.ci_halfwidth);
    out += ',';
    out += r.feasible ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string render_svg(std::span<const PointResult> rows, const std::string& x_label) {
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 160, kTop = 30, kBottom = 60;
  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;

  double x_min = rows.front().axis_value, x_max = x_min, y_max = 0.0;
  for (const auto& r : rows) {
    x_min = std::min(x_min, r.axis_value);
    x_max = std::max(x_max, r.axis_value);
    y_max = std::max(y_max, r.ergodic_secondary);
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.1;
  const auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto sy = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

  // Preserve first-appearance order of schemes.
  std::vector<SchemeKind> order;
  std::map<SchemeKind, std::vector<const PointResult*>> series;
  for (const auto& r : rows) {
    if (!series.count(r.scheme)) order.push_back(r.scheme);
    series[r.scheme].push_back(&r);
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kW) + "\" height=\"" +
         px(kH) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + px(kW) + "\" height=\"" + px(kH) +
         "\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(plot_w) +
         "\" height=\"" + px(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = y_max * i / 4.0;
    svg += "<text x=\"" + px(kLeft - 6) + "\" y=\"" + px(sy(yv) + 4) +
           "\" text-anchor=\"end\">" + sig9(yv).substr(0, 6) + "</text>\n";
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    svg += "<text x=\"" + px(sx(xv)) + "\" y=\"" + px(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + sig9(xv).substr(0, 6) + "</text>\n";
  }
  svg += "<text x=\"" + px(kLeft + plot_w / 2) + "\" y=\"" + px(kH - 15) +
         "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  svg += "<text x=\"15\" y=\"" + px(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " + px(kTop + plot_h / 2) +
         ")\">ergodic secondary rate (suts/s/Hz)</text>\n";

  for (std::size_t s = 0; s < order.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    std::string points;
    for (const auto* r : series[order[s]]) {
      if (!points.empty()) points += ' ';
      points += px(sx(r->axis_value)) + "," + px(sy(r->ergodic_secondary));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const double ly = kTop + 16 + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + px(kW - kRight + 12) + "\" y1=\"" + px(ly) + "\" x2=\"" +
           px(kW - kRight + 36) + "\" y2=\"" + px(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + px(kW - kRight + 42) + "\" y=\"" + px(ly + 4) + "\">" +
           std::string(to_string(order[s])) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string svg_companion_path(const std::string& csv_path) {
  constexpr std::string_view ext = ".csv";
  if (csv_path.size() >= ext.size() &&
      csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0)
    return csv_path.substr(0, csv_path.size() - ext.size()) + ".svg";
  return csv_path + ".svg";
}

void write_results(std::span<const PointResult> rows, const std::string& out_path,
                   bool plot, const std::string& x_label) {
  if (rows.empty()) throw ValidationError("no result rows to write");
  const auto write = [](const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path);
    out << body;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
  };
  write(out_path, format_results_csv(rows));
  if (plot) write(svg_companion_path(out_path), render_svg(rows, x_label));
}

}  // namespace semnoma
