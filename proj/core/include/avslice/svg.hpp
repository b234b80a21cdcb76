#pragma once

#include <string>
#include <vector>

namespace avslice::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;  // NaN marks a missing point; the line breaks there
};

struct ChartLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Self-contained SVG line chart. Output depends only on the inputs.
std::string line_chart(const std::vector<Series>& series, const ChartLabels& labels);

/// Stacked bars, one per category; each layer is a fraction in [0, 1].
std::string stacked_bars(const std::vector<std::string>& categories,
                         const std::vector<std::string>& layer_names,
                         const std::vector<std::vector<double>>& layers,
                         const ChartLabels& labels);

}  // namespace avslice::svg
