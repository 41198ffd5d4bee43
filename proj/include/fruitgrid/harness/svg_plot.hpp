#pragma once

#include <string>
#include <vector>

namespace fruitgrid {

struct CurveSeries {
  std::string label;
  std::vector<double> x, y;
};

struct BarItem {
  std::string label;
  double value = 0.0;
};

// Self-contained SVG line chart: one polyline per series, axes with ticks,
// legend. No external assets.
void write_line_chart_svg(const std::vector<CurveSeries>& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& path);

void write_bar_chart_svg(const std::vector<BarItem>& bars, const std::string& title,
                         const std::string& y_label, const std::string& path);

}  // namespace fruitgrid
