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

#include "entdist/locc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace entdist::locc {

namespace {

// Full scans are cheap up to this rank; beyond it twinbeam_to_maxent
// locates the minimiser analytically.
constexpr std::int64_t kScanLimit = 1 << 16;

double tail_ratio(const states::SchmidtSpectrum& source,
                  const states::SchmidtSpectrum& target, std::int64_t i) {
  return source.tail(i) / target.tail(i);
}

ConversionResult minimise_over(const states::SchmidtSpectrum& source,
                               const states::SchmidtSpectrum& target,
                               const std::vector<std::int64_t>& indices) {
  ConversionResult result;
  result.p_star = std::numeric_limits<double>::infinity();
  for (std::int64_t i : indices) {
    const double value = tail_ratio(source, target, i);
    if (value < result.p_star) {
      result.p_star = value;
      result.argmin_index = i;
    }
  }
  return result;
}

ConversionResult scan(const states::SchmidtSpectrum& source,
                      const states::SchmidtSpectrum& target,
                      std::int64_t m) {
  ConversionResult result;
  result.p_star = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < m; ++i) {
    const double value = tail_ratio(source, target, i);
    if (value < result.p_star) {  // strict: ties go to the smallest index
      result.p_star = value;
      result.argmin_index = i;
    }
  }
  return result;
}

}  // namespace

ConversionResult vidal_probability(const states::SchmidtSpectrum& source,
                                   const states::SchmidtSpectrum& target) {
  if (!target.finite_rank()) {
    throw std::invalid_argument(
        "vidal_probability: target must have finite Schmidt rank");
  }
  return scan(source, target, target.rank());
}

ConversionResult twinbeam_to_maxent(double x, std::int64_t m) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::invalid_argument(
        "twinbeam_to_maxent: x must lie in [0,1), got " + std::to_string(x));
  }
  if (m < 1) {
    throw std::invalid_argument("twinbeam_to_maxent: target rank must be >= 1");
  }
  const auto source = states::SchmidtSpectrum::geometric(x);
  const auto target = states::SchmidtSpectrum::finite_uniform(m);

  ConversionResult result;
  if (m <= kScanLimit) {
    result = scan(source, target, m);
  } else {
    // The term sequence f(i) = M x^i / (M-i) is unimodal: the ratio
    // f(i+1)/f(i) = x (M-i)/(M-i-1) increases with i and crosses 1 at
    // i = M - 1/(1-x). Evaluating around that index (plus the ends; index 1
    // covers x == 0) reproduces the full scan, including the
    // smallest-index tie rule. Under extreme underflow the reported index
    // may differ from the full-scan one while p_star is identically zero.
    std::vector<std::int64_t> candidates{0, 1, m - 1};
    const double crossing =
        static_cast<double>(m) - 1.0 / (1.0 - x);
    const auto center = static_cast<std::int64_t>(std::ceil(crossing));
    for (std::int64_t i = center - 1; i <= center + 1; ++i) {
      if (i > 0 && i < m - 1) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    result = minimise_over(source, target, candidates);
  }
  result.p_prime = static_cast<double>(m) *
                   std::pow(x, static_cast<double>(m - 1));
  return result;
}

bool threshold_holds(double lambda_mag, double eta) {
  if (!(lambda_mag >= 0.0 && lambda_mag < 1.0)) {
    throw std::invalid_argument(
        "threshold_holds: |lambda| must lie in [0,1)");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("threshold_holds: eta must lie in [0,1]");
  }
  return eta * lambda_mag * lambda_mag <= 1.0 / std::numbers::e;
}

}  // namespace entdist::locc
