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

#include <cstdint>
#include <optional>

#include "entdist/states.hpp"

// Optimal single-copy LOCC conversion probabilities between bipartite pure
// states, via Vidal's theorem: the maximal success probability equals the
// minimum over i of the ratio of Schmidt tail sums of source and target.
namespace entdist::locc {

struct ConversionResult {
  /// Optimal conversion probability, min over i of tail ratios. The i = 0
  /// term equals 1 for normalised spectra, so the value never exceeds 1
  /// (up to the 1e-12 normalisation slack of explicit lists).
  double p_star = 0.0;
  /// Smallest index attaining the minimum.
  std::int64_t argmin_index = 0;
  /// The bound M x^(M-1) for the twin-beam -> maximally-entangled case.
  /// A bound expression, not a probability: it may exceed 1.
  std::optional<double> p_prime;
};

/// Vidal's formula for an arbitrary source and a finite-rank target: the
/// minimum of tail_source(i) / tail_target(i) over i in [0, M-1], where M is
/// the target Schmidt rank. Indices with vanishing target tail are excluded
/// by the index range. Targets of infinite rank are rejected. Ties resolve
/// to the smallest index.
ConversionResult vidal_probability(const states::SchmidtSpectrum& source,
                                   const states::SchmidtSpectrum& target);

/// Closed-form specialisation for a geometric source with ratio x (a twin
/// beam after loss, x = eta lambda^2) and a rank-M maximally entangled
/// target: p* = min_{i in [0,M-1]} M x^i / (M-i). Returns the same value as
/// vidal_probability on the corresponding spectra, plus the bound
/// p' = M x^(M-1). For large M the minimising index is located analytically
/// (the term sequence is unimodal in i), so the cost stays O(1).
ConversionResult twinbeam_to_maxent(double x, std::int64_t m);

/// True when x = eta lambda^2 <= 1/e, equivalently |lambda| <= (eta e)^-1/2.
/// In that regime twinbeam_to_maxent returns p_star == p_prime for every M:
/// comparing the i = M-1 term against any earlier one gives the factor
/// (k+1) x^k with k = M-1-i >= 1, and (k+1) e^-k <= 1 for all k >= 1, so the
/// last index is the minimiser.
bool threshold_holds(double lambda_mag, double eta);

}  // namespace entdist::locc
