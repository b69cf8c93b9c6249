// Copyright 2026 The dphc Authors.
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

#ifndef DPHC_SVG_HPP_
#define DPHC_SVG_HPP_

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace dphc::svg {

struct Series {
  std::string name;
  std::vector<double> values;  // one per category / x position
};

namespace detail {

inline constexpr const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                           "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

inline std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline double max_value(const std::vector<Series>& series) {
  double m = 0.0;
  for (const auto& s : series) {
    for (double v : s.values) m = std::max(m, v);
  }
  return m > 0.0 ? m : 1.0;
}

inline void header(std::ostream& out, int w, int h, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
}

inline void legend(std::ostream& out, const std::vector<Series>& series, int x, int y) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    const int row = y + static_cast<int>(i) * 16;
    out << "<rect x=\"" << x << "\" y=\"" << row - 9 << "\" width=\"10\" height=\"10\" fill=\"" << kPalette[i % 8]
        << "\"/><text x=\"" << x + 14 << "\" y=\"" << row << "\">" << series[i].name << "</text>\n";
  }
}

}  // namespace detail

/// Grouped bar chart: one group per category, one bar per series.
inline void bar_chart(std::ostream& out, const std::string& title, const std::vector<std::string>& categories,
                      const std::vector<Series>& series) {
  const int width = 760, height = 420, left = 70, right = 170, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double vmax = detail::max_value(series);
  detail::header(out, width, height, title);
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\">" << detail::label(vmax)
      << "</text>\n";
  const double group_w = categories.empty() ? plot_w : plot_w / categories.size();
  const double bar_w = series.empty() ? group_w : 0.8 * group_w / series.size();
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = left + c * group_w + 0.1 * group_w;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = c < series[s].values.size() ? series[s].values[c] : 0.0;
      const double h = plot_h * v / vmax;
      out << "<rect x=\"" << detail::num(gx + s * bar_w) << "\" y=\"" << detail::num(top + plot_h - h)
          << "\" width=\"" << detail::num(bar_w) << "\" height=\"" << detail::num(h) << "\" fill=\""
          << detail::kPalette[s % 8] << "\"/>\n";
    }
    out << "<text x=\"" << detail::num(left + (c + 0.5) * group_w) << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"middle\">" << categories[c] << "</text>\n";
  }
  detail::legend(out, series, width - right + 12, top + 10);
  out << "</svg>\n";
}

/// Line chart over shared numeric x positions.
inline void line_chart(std::ostream& out, const std::string& title, const std::vector<double>& xs,
                       const std::vector<Series>& series, const std::string& x_label, const std::string& y_label) {
  const int width = 760, height = 420, left = 70, right = 170, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double vmax = detail::max_value(series);
  const double xmin = xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
  const double xmax = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end());
  const double span = xmax > xmin ? xmax - xmin : 1.0;
  auto px = [&](double x) { return left + plot_w * (x - xmin) / span; };
  auto py = [&](double y) { return top + plot_h - plot_h * y / vmax; };
  detail::header(out, width, height, title);
  out << "<polyline points=\"" << left << ',' << top << ' ' << left << ',' << top + plot_h << ' ' << left + plot_w
      << ',' << top + plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\">" << detail::label(vmax)
      << "</text>\n";
  for (double x : xs) {
    out << "<text x=\"" << detail::num(px(x)) << "\" y=\"" << top + plot_h + 16 << "\" text-anchor=\"middle\">"
        << detail::label(x) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">" << x_label
      << "</text>\n<text x=\"14\" y=\"" << top + plot_h / 2 << "\" transform=\"rotate(-90 14 " << top + plot_h / 2
      << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "<polyline fill=\"none\" stroke=\"" << detail::kPalette[s % 8] << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size() && i < series[s].values.size(); ++i) {
      out << detail::num(px(xs[i])) << ',' << detail::num(py(series[s].values[i])) << ' ';
    }
    out << "\"/>\n";
  }
  detail::legend(out, series, width - right + 12, top + 10);
  out << "</svg>\n";
}

}  // namespace dphc::svg

#endif  // DPHC_SVG_HPP_
