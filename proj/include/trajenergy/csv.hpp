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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "trajenergy/errors.hpp"
#include "trajenergy/simeval.hpp"
#include "trajenergy/trajectory.hpp"

namespace trajenergy {

/// Formats with 17 significant digits so a round trip through text
/// reproduces the exact double.
inline std::string format_full(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

/// Header plus numeric rows. Comma separators, '.' decimals, LF endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) {
    throw ParseError("cannot write csv: " + path);
  }
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const std::vector<double>& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << format_full(row[i]);
    }
    out << '\n';
  }
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open csv: " + path);
  }
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("csv " + path + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.header.push_back(cell);
  std::size_t row_index = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    while (std::getline(fields, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw ParseError("csv " + path + ": bad number '" + cell + "' in row " +
                         std::to_string(row_index));
      }
      row.push_back(v);
    }
    if (row.size() != table.header.size()) {
      throw ParseError("csv " + path + ": row " + std::to_string(row_index) +
                       " has " + std::to_string(row.size()) + " fields, header has " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
    ++row_index;
  }
  return table;
}

/// Sampled trajectory table: t, q1..qn, v1..vn, a1..an.
inline CsvTable trajectory_to_csv(const Trajectory& traj, double dt) {
  const int n = traj.dofs();
  CsvTable table;
  table.header.push_back("t");
  for (const char* prefix : {"q", "v", "a"}) {
    for (int j = 1; j <= n; ++j) {
      table.header.push_back(prefix + std::to_string(j));
    }
  }
  for (double t : sample_times(traj.duration(), dt)) {
    const TrajectorySample s = traj.eval(t);
    std::vector<double> row;
    row.reserve(1 + 3 * n);
    row.push_back(t);
    for (int j = 0; j < n; ++j) row.push_back(s.q[j]);
    for (int j = 0; j < n; ++j) row.push_back(s.qd[j]);
    for (int j = 0; j < n; ++j) row.push_back(s.qdd[j]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Metric series table: t, power, accel_norm, cum_energy, vel_mag.
inline CsvTable metrics_to_csv(const MetricsReport& report) {
  CsvTable table;
  table.header = {"t", "power", "accel_norm", "cum_energy", "vel_mag"};
  for (std::size_t k = 0; k < report.time.size(); ++k) {
    table.rows.push_back({report.time[k], report.power_series[k],
                          report.accel_norm[k], report.cumulative_energy[k],
                          report.velocity_magnitude[k]});
  }
  return table;
}

}  // namespace trajenergy
