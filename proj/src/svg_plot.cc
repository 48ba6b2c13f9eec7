// Copyright 2026 The iiglearn Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iig/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "iig/csv_format.h"
#include "iig/errors.h"

namespace iig {

AxisRange LogAxisRange(double data_min, double data_max) {
  double lo = std::log10(data_min);
  double hi = std::log10(data_max);
  if (!(hi > lo)) {
    // Degenerate extent: half a decade of padding around the point.
    return AxisRange{lo - 0.5, lo + 0.5};
  }
  const double pad = 0.05 * (hi - lo);
  return AxisRange{lo - pad, hi + pad};
}

double PlotGeometry::X(const AxisRange& r, double v) const {
  const double frac = (std::log10(v) - r.lo) / (r.hi - r.lo);
  return margin_left + frac * (width - margin_left - margin_right);
}

double PlotGeometry::Y(const AxisRange& r, double v) const {
  const double frac = (std::log10(v) - r.lo) / (r.hi - r.lo);
  return height - margin_bottom -
         frac * (height - margin_top - margin_bottom);
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};

std::string Coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void DecadeTicks(const AxisRange& r, std::vector<int>* ticks) {
  for (int d = static_cast<int>(std::floor(r.lo)); d <= std::ceil(r.hi); ++d) {
    if (d >= r.lo - 1e-9 && d <= r.hi + 1e-9) ticks->push_back(d);
  }
}

}  // namespace

std::string RenderLogLogSvg(const std::vector<PlotSeries>& series,
                            const std::string& x_label,
                            const std::string& y_label) {
  PlotGeometry geom;
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!any) {
        x_min = x_max = x;
        y_min = y_max = y;
        any = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  const AxisRange xr = any ? LogAxisRange(x_min, x_max) : AxisRange{0, 1};
  const AxisRange yr = any ? LogAxisRange(y_min, y_max) : AxisRange{-1, 0};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << geom.width
      << "\" height=\"" << geom.height << "\" viewBox=\"0 0 " << geom.width
      << " " << geom.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double px0 = geom.margin_left;
  const double px1 = geom.width - geom.margin_right;
  const double py0 = geom.margin_top;
  const double py1 = geom.height - geom.margin_bottom;
  out << "<rect x=\"" << Coord(px0) << "\" y=\"" << Coord(py0) << "\" width=\""
      << Coord(px1 - px0) << "\" height=\"" << Coord(py1 - py0)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";

  std::vector<int> xticks, yticks;
  DecadeTicks(xr, &xticks);
  DecadeTicks(yr, &yticks);
  for (int d : xticks) {
    const double x = geom.X(xr, std::pow(10.0, d));
    out << "<line x1=\"" << Coord(x) << "\" y1=\"" << Coord(py1) << "\" x2=\""
        << Coord(x) << "\" y2=\"" << Coord(py1 + 5) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << Coord(x) << "\" y=\"" << Coord(py1 + 20)
        << "\" font-size=\"11\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d : yticks) {
    const double y = geom.Y(yr, std::pow(10.0, d));
    out << "<line x1=\"" << Coord(px0 - 5) << "\" y1=\"" << Coord(y)
        << "\" x2=\"" << Coord(px0) << "\" y2=\"" << Coord(y)
        << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << Coord(px0 - 8) << "\" y=\"" << Coord(y + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  out << "<text x=\"" << Coord((px0 + px1) / 2) << "\" y=\""
      << Coord(geom.height - 12) << "\" font-size=\"13\" "
      << "text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << Coord((py0 + py1) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << Coord((py0 + py1) / 2) << ")\">" << y_label << "</text>\n";

  int color = 0;
  double legend_y = py0 + 12;
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    const char* stroke = kPalette[color % 8];
    out << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : s.points) {
      out << Coord(geom.X(xr, x)) << "," << Coord(geom.Y(yr, y)) << " ";
    }
    out << "\"/>\n";
    out << "<line x1=\"" << Coord(px1 + 8) << "\" y1=\"" << Coord(legend_y)
        << "\" x2=\"" << Coord(px1 + 28) << "\" y2=\"" << Coord(legend_y)
        << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << Coord(px1 + 33) << "\" y=\"" << Coord(legend_y + 4)
        << "\" font-size=\"11\">" << s.label << "</text>\n";
    legend_y += 16;
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

int WriteConvergencePlot(const std::vector<std::string>& csv_paths,
                         const std::string& out_path, std::string* warnings) {
  if (csv_paths.empty()) throw ArgumentError("plot: need at least one CSV");
  std::map<std::string, PlotSeries> by_key;
  for (const auto& path : csv_paths) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("plot: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const CsvTable table = ParseCsv(buffer.str());
    for (const auto& row : table.rows) {
      const std::string key = row.game + "/" + row.algo;
      PlotSeries& series = by_key[key];
      series.label = key;
      if (row.episode > 0 && std::isfinite(row.exploit_avg) &&
          row.exploit_avg > 0.0) {
        series.points.emplace_back(static_cast<double>(row.episode),
                                   row.exploit_avg);
      }
    }
  }
  std::vector<PlotSeries> series;
  for (auto& [key, s] : by_key) {
    std::sort(s.points.begin(), s.points.end());
    if (s.points.empty()) {
      if (warnings) {
        *warnings += "series " + key + " has no plottable points\n";
      }
      continue;
    }
    series.push_back(std::move(s));
  }
  const std::string svg =
      RenderLogLogSvg(series, "episodes", "exploitability gap");
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw ArgumentError("plot: cannot write " + out_path);
  out << svg;
  return static_cast<int>(series.size());
}

}  // namespace iig
