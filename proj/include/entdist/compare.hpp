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

#include "entdist/locc.hpp"

// Head-to-head of the two distribution strategies for N shared ebits over a
// lossy link: N polarisation-encoded single photons (success probability
// p_b = eta^N) versus one twin beam upgraded to a 2^N-dimensional maximally
// entangled state by the optimal LOCC conversion (success probability
// p_C = q p*).
namespace entdist::compare {

/// One fully evaluated (eta, lambda, N) point.
struct ComparisonPoint {
  int n = 0;               // number of shared ebits requested
  double eta = 0.0;        // channel transmissivity
  double lambda_mag = 0.0; // twin-beam gain parameter magnitude
  std::int64_t m = 0;      // target Schmidt rank, 2^n
  double p_b = 0.0;        // eta^n, the N-photon success probability
  double q = 0.0;          // twin-beam survival probability
  double p_star = 0.0;     // optimal LOCC conversion probability
  double p_prime = 0.0;    // bound M x^(M-1); may exceed 1
  double p_c = 0.0;        // q * p_star, bit-identical to that product
  double r = 0.0;          // p_b / p_prime, exponentiated from ln_r
  double ln_r = 0.0;       // always finite for x > 0; r itself may overflow
};

struct RatioResult {
  double r;
  double ln_r;
};

struct ChainCheck {
  bool holds;    // r <= p_b/(q p') <= p_b/p_C within 1e-12 relative
  bool vacuous;  // true when x == 0: p_C vanishes and the chain is undefined
};

/// eta^n: probability that all n polarisation photons survive.
double ebit_probability(double eta, int n);

/// (1 - lambda^2)/(1 - eta lambda^2): probability that the twin beam
/// survives loss on both modes as a rescaled twin beam.
double survival_probability(double eta, double lambda_mag);

/// Evaluates every derived quantity at one grid point. n is capped at 30
/// (2^30 target indices); larger requests are rejected, not saturated.
/// For x = eta lambda^2 == 0 the ratio r is infinity when p_b > 0 (the
/// photon scheme dominates trivially) and NaN when p_b == 0.
ComparisonPoint evaluate_point(double eta, double lambda_mag, int n);

/// r = (eta/2)^N (1/x)^(2^N - 1), evaluated as
/// ln r = (1 - 2^N) ln x + N ln(eta/2) and then exponentiated; the exponent
/// 2^N - 1 overflows direct powers quickly, so ln_r is the reliable field.
/// Requires x > 0.
RatioResult efficiency_ratio(double eta, double lambda_mag, int n);

/// Smallest n >= 1 with r > 1. Exists for every 0 < x < 1 since ln r grows
/// like 2^N ln(1/x); found by a linear scan.
int crossover_n(double eta, double lambda_mag);

/// Verifies r <= p_b/(q p') <= p_b/p_C at one point, in log space so the
/// check stays meaningful where the linear quantities over- or underflow.
ChainCheck chain_check(const ComparisonPoint& point);

}  // namespace entdist::compare
