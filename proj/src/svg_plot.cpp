// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "shrinklp/errors.hpp"
#include "shrinklp/matrix_io.hpp"

namespace shrinklp {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 170.0;
constexpr double kMarginTop = 45.0;
constexpr double kMarginBottom = 55.0;

double nice_step(double raw) {
  if (raw <= 0.0) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step;
  if (norm <= 1.0) {
    step = 1.0;
  } else if (norm <= 2.0) {
    step = 2.0;
  } else if (norm <= 5.0) {
    step = 5.0;
  } else {
    step = 10.0;
  }
  return step * mag;
}

std::string tick_label(double v) {
  // Snap tiny tick roundoff so labels stay short.
  if (std::fabs(v) < 1e-12) v = 0.0;
  return format_double(v);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      std::vector<PlotSeries> series) {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (auto& s : series) {
    std::sort(s.points.begin(), s.points.end());
    for (const auto& [x, y] : s.points) {
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (!any) throw SchemaError("write_line_chart: no data points");
  if (xmax - xmin < 1e-12) {
    xmin -= std::max(1.0, std::fabs(xmin) * 0.1);
    xmax += std::max(1.0, std::fabs(xmax) * 0.1);
  }
  if (ymax - ymin < 1e-12) {
    ymin -= std::max(1e-6, std::fabs(ymin) * 0.1);
    ymax += std::max(1e-6, std::fabs(ymax) * 0.1);
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double x) {
    return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w;
  };
  const auto sy = [&](double y) {
    return kMarginTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << xml_escape(title)
      << "</text>\n";

  // Axes.
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
      << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\""
      << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
      << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h
      << "\" stroke=\"black\"/>\n";

  const double xstep = nice_step((xmax - xmin) / 5.0);
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9;
       t += xstep) {
    svg << "<line x1=\"" << sx(t) << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << sx(t) << "\" y2=\"" << kMarginTop + plot_h + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(t) << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << tick_label(t) << "</text>\n";
  }
  const double ystep = nice_step((ymax - ymin) / 5.0);
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9;
       t += ystep) {
    svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << sy(t)
        << "\" x2=\"" << kMarginLeft << "\" y2=\"" << sy(t)
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << sy(t) << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << sy(t)
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << sy(t) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << tick_label(t) << "</text>\n";
  }
  svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\""
      << kHeight - 12 << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(x_label)
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"12\" transform=\"rotate(-90 18 "
      << kMarginTop + plot_h / 2 << ")\">" << xml_escape(y_label)
      << "</text>\n";

  double legend_y = kMarginTop + 10.0;
  for (const PlotSeries& s : series) {
    if (s.points.empty()) continue;
    svg << "<polyline class=\"series\" data-series=\"" << xml_escape(s.name)
        << "\" fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.8\" points=\"";
    for (const auto& [x, y] : s.points) {
      svg << sx(x) << "," << sy(y) << " ";
    }
    svg << "\"/>\n";
    for (const auto& [x, y] : s.points) {
      svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
          << "\" r=\"2.4\" fill=\"" << s.color << "\"/>\n";
    }
    const double lx = kMarginLeft + plot_w + 12.0;
    svg << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\""
        << lx + 22 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << lx + 28 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(s.name) << "</text>\n";
    legend_y += 18.0;
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << svg.str();
  if (!out) throw IoError("write failed: " + path);
}

namespace {

struct AggTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    throw SchemaError("aggregated CSV is missing column '" + name + "'");
  }
};

AggTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  AggTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (table.header.empty() || table.rows.empty()) {
    throw SchemaError("aggregated CSV has no data: " + path);
  }
  return table;
}

double field_double(const std::vector<std::string>& row, int col) {
  if (col >= static_cast<int>(row.size()) || row[col].empty()) {
    return std::nan("");
  }
  return std::strtod(row[col].c_str(), nullptr);
}

std::string series_color(const std::string& method, int robust_index) {
  if (method == "nominal") return "#1f77b4";    // blue
  if (method == "shrinkage") return "#ff7f0e";  // orange
  static const char* kRobustColors[] = {"#2ca02c", "#d62728", "#9467bd",
                                        "#8c564b", "#17becf"};
  return kRobustColors[robust_index % 5];
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& agg_csv_path,
                                    const std::string& out_dir) {
  const AggTable table = read_csv(agg_csv_path);
  const int col_c = table.column("c");
  const int col_p = table.column("p");
  const int col_sigma = table.column("sigma");
  const int col_method = table.column("method");
  const int col_gamma = table.column("gamma_factor");
  const struct {
    const char* column;
    const char* stem;
    const char* label;
  } criteria[] = {
      {"mean_rel_obj", "rel_obj", "relative objective"},
      {"mean_viol_mag", "viol_mag", "violation magnitude"},
      {"mean_viol_ratio", "viol_ratio", "violated-constraint ratio"},
  };
  for (const auto& crit : criteria) table.column(crit.column);
  const int col_time = table.column("mean_solve_time_ms");

  std::set<double> distinct_c, distinct_p, sigmas;
  for (const auto& row : table.rows) {
    distinct_c.insert(field_double(row, col_c));
    distinct_p.insert(field_double(row, col_p));
    sigmas.insert(field_double(row, col_sigma));
  }
  const bool x_is_p = distinct_p.size() >= distinct_c.size();
  const int col_x = x_is_p ? col_p : col_c;
  const std::string x_label = x_is_p ? "p" : "c = m/p";

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;

  for (double sigma : sigmas) {
    const std::string sigma_text = format_double(sigma);
    const auto collect = [&](int value_col) {
      // method/gamma key -> series, robust series ordered by gamma.
      std::map<std::pair<int, double>, PlotSeries> bucket;
      for (const auto& row : table.rows) {
        if (field_double(row, col_sigma) != sigma) continue;
        const std::string& method = row[col_method];
        const double gamma = field_double(row, col_gamma);
        const double x = field_double(row, col_x);
        const double y = field_double(row, value_col);
        if (std::isnan(x) || std::isnan(y)) continue;
        int rank = method == "nominal" ? 0 : method == "shrinkage" ? 1 : 2;
        const std::pair<int, double> key{rank, std::isnan(gamma) ? -1.0 : gamma};
        PlotSeries& s = bucket[key];
        if (s.name.empty()) {
          s.name = method;
          if (rank == 2) s.name += " g=" + format_double(gamma);
        }
        s.points.emplace_back(x, y);
      }
      std::vector<PlotSeries> series;
      int robust_index = 0;
      for (auto& [key, s] : bucket) {
        s.color = series_color(key.first == 0   ? "nominal"
                               : key.first == 1 ? "shrinkage"
                                                : "robust",
                               key.first == 2 ? robust_index++ : 0);
        series.push_back(std::move(s));
      }
      return series;
    };

    for (const auto& crit : criteria) {
      auto series = collect(table.column(crit.column));
      if (series.empty()) continue;
      const std::string path = (std::filesystem::path(out_dir) /
                                (std::string(crit.stem) + "_sigma_" +
                                 sigma_text + ".svg"))
                                   .string();
      write_line_chart(path,
                       std::string(crit.label) + ", sigma=" + sigma_text,
                       x_label, crit.label, std::move(series));
      written.push_back(path);
    }
    auto time_series = collect(col_time);
    if (!time_series.empty()) {
      const std::string path =
          (std::filesystem::path(out_dir) / ("time_sigma_" + sigma_text + ".svg"))
              .string();
      write_line_chart(path, "solve time, sigma=" + sigma_text, x_label,
                       "solve time [ms]", std::move(time_series));
      written.push_back(path);
    }
  }
  if (written.empty()) {
    throw SchemaError("no plottable rows in " + agg_csv_path);
  }
  return written;
}

}  // namespace shrinklp
