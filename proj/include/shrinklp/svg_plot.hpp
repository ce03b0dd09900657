// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace shrinklp {

/// One polyline in a chart.
struct PlotSeries {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;  // sorted by x before drawing
};

/// Minimal self-contained SVG line chart (no plotting dependency); each
/// series becomes a <polyline class="series" data-series="name">.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      std::vector<PlotSeries> series);

/// Reads an aggregated sweep CSV and emits one SVG per (sigma, criterion)
/// plus one solve-time SVG per sigma into out_dir. The x axis is whichever
/// of p or c actually varies. Nominal is drawn blue, shrinkage orange, and
/// each robust gamma factor gets its own series. Missing required columns
/// or an empty file raise SchemaError.
std::vector<std::string> emit_plots(const std::string& agg_csv_path,
                                    const std::string& out_dir);

}  // namespace shrinklp
