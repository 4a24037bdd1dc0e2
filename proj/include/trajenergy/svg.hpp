// Copyright 2026 The trajenergy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "trajenergy/errors.hpp"

namespace trajenergy {

namespace detail {

inline std::string short_num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

}  // namespace detail

/// Writes one series as a fixed-size 800x600 SVG line chart. Output is a
/// plain polyline with axes and min/max labels; deterministic for
/// identical inputs.
inline void write_line_plot_svg(const std::string& path,
                                const std::string& title,
                                const std::vector<double>& x,
                                const std::vector<double>& y,
                                const std::string& x_label,
                                const std::string& y_label) {
  if (x.size() != y.size()) {
    throw LengthMismatch("write_line_plot_svg: x and y differ in length");
  }
  if (x.size() < 2) {
    throw TooFewSamples("write_line_plot_svg: need at least 2 points");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot write svg: " + path);
  }
  double x_min = x.front(), x_max = x.front();
  double y_min = y.front(), y_max = y.front();
  for (std::size_t k = 0; k < x.size(); ++k) {
    x_min = std::min(x_min, x[k]);
    x_max = std::max(x_max, x[k]);
    y_min = std::min(y_min, y[k]);
    y_max = std::max(y_max, y[k]);
  }
  if (x_max - x_min <= 0.0) x_max = x_min + 1.0;
  if (y_max - y_min <= 0.0) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double left = 80.0, right = 780.0, top = 50.0, bottom = 550.0;
  const auto map_x = [&](double v) {
    return left + (v - x_min) / (x_max - x_min) * (right - left);
  };
  const auto map_y = [&](double v) {
    return bottom - (v - y_min) / (y_max - y_min) * (bottom - top);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out << "  <text x=\"400\" y=\"28\" font-size=\"18\" text-anchor=\"middle\">"
      << title << "</text>\n";
  out << "  <line x1=\"80\" y1=\"550\" x2=\"780\" y2=\"550\" stroke=\"black\"/>\n";
  out << "  <line x1=\"80\" y1=\"50\" x2=\"80\" y2=\"550\" stroke=\"black\"/>\n";
  out << "  <text x=\"430\" y=\"585\" font-size=\"14\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  out << "  <text x=\"20\" y=\"300\" font-size=\"14\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 20 300)\">"
      << y_label << "</text>\n";
  out << "  <text x=\"80\" y=\"568\" font-size=\"12\" text-anchor=\"middle\">"
      << detail::short_num(x_min) << "</text>\n";
  out << "  <text x=\"780\" y=\"568\" font-size=\"12\" text-anchor=\"middle\">"
      << detail::short_num(x_max) << "</text>\n";
  out << "  <text x=\"74\" y=\"554\" font-size=\"12\" text-anchor=\"end\">"
      << detail::short_num(y_min) << "</text>\n";
  out << "  <text x=\"74\" y=\"54\" font-size=\"12\" text-anchor=\"end\">"
      << detail::short_num(y_max) << "</text>\n";
  out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k > 0) out << ' ';
    out << detail::short_num(map_x(x[k])) << ',' << detail::short_num(map_y(y[k]));
  }
  out << "\"/>\n";
  out << "</svg>\n";
}

}  // namespace trajenergy
