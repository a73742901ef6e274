#pragma once

// Minimal self-contained SVG line charts (polyline primitives only).

#include <string>
#include <utility>
#include <vector>

namespace stirap {

struct ChartSeries {
  std::string label;
  std::string color = "#000000";
  bool dashed = false;
  std::vector<std::pair<double, double>> points;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;  // requires strictly positive x data
  std::vector<ChartSeries> series;

  std::string render() const;
};

}  // namespace stirap
