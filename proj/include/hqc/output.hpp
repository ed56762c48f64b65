#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hqc {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotAxes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Minimal SVG line chart: one polyline per series, axes box and labels.
/// Points that cannot be placed (non-finite, or <= 0 on a log axis) are
/// dropped.
void write_svg_plot(std::ostream& out, const PlotAxes& axes, const std::vector<PlotSeries>& series);

/// Writes `content` to a temporary file next to `path` and renames it into
/// place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace hqc
