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
//
// Minimal self-contained SVG emitter for log-log convergence plots.

#ifndef IIG_SVG_PLOT_H_
#define IIG_SVG_PLOT_H_

#include <string>
#include <utility>
#include <vector>

namespace iig {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (episode, exploitability)
};

struct AxisRange {
  double lo = 0.0;  // log10 units
  double hi = 1.0;
};

// Data extent in log10 space padded by 5% of the span on each side.
AxisRange LogAxisRange(double data_min, double data_max);

// Fixed plot geometry, exposed so tests can check coordinates exactly.
struct PlotGeometry {
  int width = 760;
  int height = 520;
  int margin_left = 70;
  int margin_right = 170;  // legend gutter
  int margin_top = 30;
  int margin_bottom = 50;

  double X(const AxisRange& r, double v) const;  // v in data units (> 0)
  double Y(const AxisRange& r, double v) const;
};

// One polyline per series; series without positive finite points are
// dropped (the caller collects warnings).
std::string RenderLogLogSvg(const std::vector<PlotSeries>& series,
                            const std::string& x_label,
                            const std::string& y_label);

// Reads experiment CSVs, groups rows into (game, algo) series of
// exploit_avg vs episode, writes a self-contained SVG. Returns the number of
// plotted series; empty series are filtered with a warning appended to
// `warnings`. Throws StructuralError on malformed CSV.
int WriteConvergencePlot(const std::vector<std::string>& csv_paths,
                         const std::string& out_path, std::string* warnings);

}  // namespace iig

#endif  // IIG_SVG_PLOT_H_
