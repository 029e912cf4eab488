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

#pragma once

#include <string>
#include <vector>

#include "entdist/compare.hpp"

// Parameter sweeps and their machine-readable serialisation. Output is
// byte-deterministic: every real is printed with up to 12 significant
// digits, switching to lowercase scientific notation below 1e-4 in
// magnitude, and rows are ordered by (eta, lambda, N) ascending.
namespace entdist::report {

inline constexpr char kCsvHeader[] =
    "eta,lambda,N,M,p_b,q,p_star,p_prime,p_C,r,ln_r";

struct SweepGrid {
  std::vector<double> etas;
  std::vector<double> lambdas;
  int n_min = 1;
  int n_max = 1;

  /// eta in {0.25, 0.5, 0.75}, lambda in {0.2, 0.5, 0.75}, N in [1, 6]:
  /// the typical operating ranges of fibre links and parametric sources.
  static SweepGrid default_grid();

  /// Throws on out-of-range values, empty axes or a bad N range.
  void validate() const;
};

/// Reads grid overrides from a key-value file (keys: eta, lambda, n_min,
/// n_max; '#' starts a comment). Keys that are absent keep their default.
SweepGrid load_grid_config(const std::string& path);

/// Evaluates every grid point, ordered by (eta, lambda, N) ascending.
std::vector<compare::ComparisonPoint> run_sweep(const SweepGrid& grid);

/// Deterministic float formatting shared by the CSV and JSON writers.
std::string format_value(double v);

std::string to_csv(const std::vector<compare::ComparisonPoint>& rows);
std::string to_json(const std::vector<compare::ComparisonPoint>& rows);
std::string point_to_csv(const compare::ComparisonPoint& point);
/// Single-object form; includes "r_gt_one", true when the N-photon scheme
/// outperforms the twin-beam scheme at this point.
std::string point_to_json(const compare::ComparisonPoint& point);

}  // namespace entdist::report
