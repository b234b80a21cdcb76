#include "avslice/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace avslice::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const {
    return kLeft + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y1 > y0 ? (y - y0) / (y1 - y0) : 0.5) *
                                   (kHeight - kTop - kBottom);
  }
};

void header(std::ostringstream& o, const ChartLabels& labels) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(labels.title) << "</text>\n";
  o << "<text x=\"" << num(kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\""
    << num(kHeight - 12) << "\" text-anchor=\"middle\">" << escape(labels.x_label)
    << "</text>\n";
  o << "<text x=\"16\" y=\"" << num(kTop + (kHeight - kTop - kBottom) / 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << num(kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << escape(labels.y_label)
    << "</text>\n";
}

void axes(std::ostringstream& o, const Frame& f, const std::vector<double>& xticks,
          const std::vector<std::string>& xtick_labels) {
  const double bottom = kHeight - kBottom;
  o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(bottom) << "\" x2=\""
    << num(kWidth - kRight) << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
    << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < xticks.size(); ++i) {
    const double x = f.px(xticks[i]);
    o << "<text x=\"" << num(x) << "\" y=\"" << num(bottom + 16)
      << "\" text-anchor=\"middle\">" << escape(xtick_labels[i]) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = f.y0 + (f.y1 - f.y0) * i / 4.0;
    const double y = f.py(v);
    o << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(y) << "\" x2=\""
      << num(kWidth - kRight) << "\" y2=\"" << num(y) << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
      << "\" text-anchor=\"end\">" << tick(v) << "</text>\n";
  }
}

void legend_entry(std::ostringstream& o, std::size_t i, const std::string& name) {
  const double y = kTop + 10 + 20.0 * static_cast<double>(i);
  const double x = kWidth - kRight + 12;
  o << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"12\" height=\"12\" fill=\""
    << kPalette[i % std::size(kPalette)] << "\"/>\n";
  o << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y + 1) << "\">" << escape(name)
    << "</text>\n";
}

}  // namespace

std::string line_chart(const std::vector<Series>& series, const ChartLabels& labels) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y1 = 0.0;
  std::vector<double> xs;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      xs.push_back(s.x[i]);
      if (i < s.y.size() && std::isfinite(s.y[i])) y1 = std::max(y1, s.y[i]);
    }
  }
  if (xs.empty()) x0 = x1 = 0.0;
  if (y1 <= 0.0) y1 = 1.0;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::string> xlabels;
  for (double x : xs) xlabels.push_back(tick(x));

  const Frame f{x0, x1, 0.0, y1 * 1.05};
  std::ostringstream o;
  header(o, labels);
  axes(o, f, xs, xlabels);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string path;
    bool pen_down = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double y = i < s.y.size() ? s.y[i] : std::nan("");
      if (!std::isfinite(y)) {
        pen_down = false;
        continue;
      }
      path += (pen_down ? " L " : (path.empty() ? "M " : " M ")) + num(f.px(s.x[i])) + ' ' +
              num(f.py(y));
      pen_down = true;
      o << "<circle cx=\"" << num(f.px(s.x[i])) << "\" cy=\"" << num(f.py(y))
        << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    if (!path.empty()) {
      o << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    }
    legend_entry(o, k, s.name);
  }
  o << "</svg>\n";
  return o.str();
}

std::string stacked_bars(const std::vector<std::string>& categories,
                         const std::vector<std::string>& layer_names,
                         const std::vector<std::vector<double>>& layers,
                         const ChartLabels& labels) {
  const std::size_t n = categories.size();
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i);
  // Half a slot of padding on both ends.
  const Frame f{-0.5, n == 0 ? 0.5 : static_cast<double>(n) - 0.5, 0.0, 1.0};
  std::ostringstream o;
  header(o, labels);
  axes(o, f, xs, categories);
  const double slot = n == 0 ? 0.0 : (kWidth - kLeft - kRight) / static_cast<double>(n);
  const double bar = slot * 0.6;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const double v = i < layers[l].size() && std::isfinite(layers[l][i])
                           ? std::clamp(layers[l][i], 0.0, 1.0)
                           : 0.0;
      const double top = f.py(std::min(1.0, acc + v));
      const double base = f.py(acc);
      o << "<rect x=\"" << num(f.px(xs[i]) - bar / 2) << "\" y=\"" << num(top)
        << "\" width=\"" << num(bar) << "\" height=\"" << num(base - top) << "\" fill=\""
        << kPalette[l % std::size(kPalette)] << "\"/>\n";
      acc += v;
    }
  }
  for (std::size_t l = 0; l < layer_names.size(); ++l) legend_entry(o, l, layer_names[l]);
  o << "</svg>\n";
  return o.str();
}

}  // namespace avslice::svg
