// Copyright 2026 The entdist developers
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

#include "entdist/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entdist::report {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& token, const std::string& context) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": cannot parse '" + token + "'");
  }
  if (consumed != token.size()) {
    throw std::invalid_argument(context + ": trailing characters in '" +
                                token + "'");
  }
  return value;
}

std::vector<double> parse_double_list(const std::string& value,
                                      const std::string& context) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    out.push_back(parse_double(token, context));
  }
  if (out.empty()) {
    throw std::invalid_argument(context + ": empty value list");
  }
  return out;
}

// JSON mirrors the CSV numbers exactly; non-finite values (possible in the
// r column for extreme grids) have no JSON literal and become null.
std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_value(v);
}

void append_row_object(std::string& out,
                       const compare::ComparisonPoint& p) {
  out += "{\"eta\": ";
  out += json_number(p.eta);
  out += ", \"lambda\": ";
  out += json_number(p.lambda_mag);
  out += ", \"N\": ";
  out += std::to_string(p.n);
  out += ", \"M\": ";
  out += std::to_string(p.m);
  out += ", \"p_b\": ";
  out += json_number(p.p_b);
  out += ", \"q\": ";
  out += json_number(p.q);
  out += ", \"p_star\": ";
  out += json_number(p.p_star);
  out += ", \"p_prime\": ";
  out += json_number(p.p_prime);
  out += ", \"p_C\": ";
  out += json_number(p.p_c);
  out += ", \"r\": ";
  out += json_number(p.r);
  out += ", \"ln_r\": ";
  out += json_number(p.ln_r);
  out += "}";
}

void append_csv_row(std::string& out, const compare::ComparisonPoint& p) {
  out += format_value(p.eta);
  out += ',';
  out += format_value(p.lambda_mag);
  out += ',';
  out += std::to_string(p.n);
  out += ',';
  out += std::to_string(p.m);
  out += ',';
  out += format_value(p.p_b);
  out += ',';
  out += format_value(p.q);
  out += ',';
  out += format_value(p.p_star);
  out += ',';
  out += format_value(p.p_prime);
  out += ',';
  out += format_value(p.p_c);
  out += ',';
  out += format_value(p.r);
  out += ',';
  out += format_value(p.ln_r);
  out += '\n';
}

}  // namespace

SweepGrid SweepGrid::default_grid() {
  SweepGrid grid;
  grid.etas = {0.25, 0.5, 0.75};
  grid.lambdas = {0.2, 0.5, 0.75};
  grid.n_min = 1;
  grid.n_max = 6;
  return grid;
}

void SweepGrid::validate() const {
  if (etas.empty()) throw std::invalid_argument("sweep grid: no eta values");
  if (lambdas.empty()) {
    throw std::invalid_argument("sweep grid: no lambda values");
  }
  for (double eta : etas) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("sweep grid: eta must lie in [0,1], got " +
                                  std::to_string(eta));
    }
  }
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
      throw std::invalid_argument(
          "sweep grid: |lambda| must lie in [0,1), got " +
          std::to_string(lambda));
    }
  }
  if (n_min < 1 || n_max > 30 || n_min > n_max) {
    throw std::invalid_argument(
        "sweep grid: need 1 <= n_min <= n_max <= 30");
  }
}

SweepGrid load_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  SweepGrid grid = SweepGrid::default_grid();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string context = "config key '" + key + "'";
    if (key == "eta" || key == "etas") {
      grid.etas = parse_double_list(value, context);
    } else if (key == "lambda" || key == "lambdas") {
      grid.lambdas = parse_double_list(value, context);
    } else if (key == "n_min") {
      grid.n_min = static_cast<int>(parse_double(value, context));
    } else if (key == "n_max") {
      grid.n_max = static_cast<int>(parse_double(value, context));
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return grid;
}

std::vector<compare::ComparisonPoint> run_sweep(const SweepGrid& grid) {
  grid.validate();
  std::vector<double> etas = grid.etas;
  std::vector<double> lambdas = grid.lambdas;
  std::sort(etas.begin(), etas.end());
  etas.erase(std::unique(etas.begin(), etas.end()), etas.end());
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  std::vector<compare::ComparisonPoint> rows;
  rows.reserve(etas.size() * lambdas.size() *
               static_cast<std::size_t>(grid.n_max - grid.n_min + 1));
  for (double eta : etas) {
    for (double lambda : lambdas) {
      for (int n = grid.n_min; n <= grid.n_max; ++n) {
        rows.push_back(compare::evaluate_point(eta, lambda, n));
      }
    }
  }
  return rows;
}

std::string format_value(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const std::vector<compare::ComparisonPoint>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    append_csv_row(out, row);
  }
  return out;
}

std::string to_json(const std::vector<compare::ComparisonPoint>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += "  ";
    append_row_object(out, rows[i]);
    if (i + 1 < rows.size()) out += ',';
    out += '\n';
  }
  out += "]\n";
  return out;
}

std::string point_to_csv(const compare::ComparisonPoint& point) {
  std::string out = kCsvHeader;
  out += '\n';
  append_csv_row(out, point);
  return out;
}

std::string point_to_json(const compare::ComparisonPoint& point) {
  std::string out;
  append_row_object(out, point);
  // Splice the flag in before the closing brace.
  out.pop_back();
  out += ", \"r_gt_one\": ";
  out += point.ln_r > 0.0 ? "true" : "false";
  out += "}\n";
  return out;
}

}  // namespace entdist::report
