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

#include "entdist/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace entdist::compare {

namespace {

constexpr int kMaxN = 30;

void require_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in [0,1], got " +
                                std::to_string(eta));
  }
}

void require_lambda(double lambda_mag) {
  if (!(lambda_mag >= 0.0 && lambda_mag < 1.0)) {
    throw std::invalid_argument("|lambda| must lie in [0,1), got " +
                                std::to_string(lambda_mag));
  }
}

void require_n(int n) {
  if (n < 1) {
    throw std::invalid_argument("N must be >= 1, got " + std::to_string(n));
  }
}

}  // namespace

double ebit_probability(double eta, int n) {
  require_eta(eta);
  require_n(n);
  return std::pow(eta, n);
}

double survival_probability(double eta, double lambda_mag) {
  require_eta(eta);
  require_lambda(lambda_mag);
  const double x2 = lambda_mag * lambda_mag;
  return (1.0 - x2) / (1.0 - eta * x2);
}

ComparisonPoint evaluate_point(double eta, double lambda_mag, int n) {
  require_eta(eta);
  require_lambda(lambda_mag);
  require_n(n);
  if (n > kMaxN) {
    throw std::invalid_argument(
        "N = " + std::to_string(n) + " exceeds the supported maximum " +
        std::to_string(kMaxN) + " (target rank 2^N would overflow the "
        "index range)");
  }

  ComparisonPoint p;
  p.n = n;
  p.eta = eta;
  p.lambda_mag = lambda_mag;
  p.m = std::int64_t{1} << n;
  p.p_b = ebit_probability(eta, n);
  p.q = survival_probability(eta, lambda_mag);

  const double x = eta * lambda_mag * lambda_mag;
  const auto conversion = locc::twinbeam_to_maxent(x, p.m);
  p.p_star = conversion.p_star;
  p.p_prime = *conversion.p_prime;
  p.p_c = p.q * p.p_star;

  if (x > 0.0) {
    const RatioResult ratio = efficiency_ratio(eta, lambda_mag, n);
    p.r = ratio.r;
    p.ln_r = ratio.ln_r;
  } else if (p.p_b > 0.0) {
    p.r = std::numeric_limits<double>::infinity();
    p.ln_r = std::numeric_limits<double>::infinity();
  } else {
    p.r = std::numeric_limits<double>::quiet_NaN();
    p.ln_r = std::numeric_limits<double>::quiet_NaN();
  }
  return p;
}

RatioResult efficiency_ratio(double eta, double lambda_mag, int n) {
  require_eta(eta);
  require_lambda(lambda_mag);
  require_n(n);
  const double x = eta * lambda_mag * lambda_mag;
  if (x <= 0.0) {
    throw std::invalid_argument(
        "efficiency_ratio: requires eta > 0 and lambda > 0 (the ratio "
        "diverges; photons dominate trivially)");
  }
  const double m = std::exp2(static_cast<double>(n));
  const double ln_r =
      (1.0 - m) * std::log(x) + static_cast<double>(n) * std::log(eta / 2.0);
  return RatioResult{std::exp(ln_r), ln_r};
}

int crossover_n(double eta, double lambda_mag) {
  require_eta(eta);
  require_lambda(lambda_mag);
  const double x = eta * lambda_mag * lambda_mag;
  if (x <= 0.0) {
    throw std::invalid_argument(
        "crossover_n: requires eta > 0 and lambda > 0");
  }
  // ln r grows like 2^N ln(1/x); even for x within one ulp of 1 the scan
  // terminates well before N = 128.
  for (int n = 1; n <= 128; ++n) {
    if (efficiency_ratio(eta, lambda_mag, n).ln_r > 0.0) return n;
  }
  throw std::logic_error("crossover_n: no crossover found below N = 128");
}

namespace {

// ln of the optimal conversion probability, minimised directly in log
// space. The term sequence M x^i/(M-i) is unimodal with the crossing at
// i = M - 1/(1-x); evaluating its logarithm around that index never
// underflows, unlike the linear-space minimum for tiny x and large M.
double ln_p_star(double x, std::int64_t m) {
  const double ln_x = std::log(x);
  const double ln_m = std::log(static_cast<double>(m));
  const auto term = [&](std::int64_t i) {
    return ln_m + static_cast<double>(i) * ln_x -
           std::log(static_cast<double>(m - i));
  };
  auto center = static_cast<std::int64_t>(
      std::ceil(static_cast<double>(m) - 1.0 / (1.0 - x)));
  center = std::clamp(center, std::int64_t{0}, m - 1);
  double best = term(0);
  for (std::int64_t i : {center - 1, center, center + 1, m - 1}) {
    if (i >= 0 && i < m) best = std::min(best, term(i));
  }
  return best;
}

}  // namespace

ChainCheck chain_check(const ComparisonPoint& point) {
  const double x = point.eta * point.lambda_mag * point.lambda_mag;
  // p_C vanishes mathematically only for x == 0; a merely underflowed p_C
  // still has finite logarithms, which is what the check runs on.
  if (x == 0.0) {
    return ChainCheck{true, true};
  }
  const double m = static_cast<double>(point.m);
  const double ln_x = std::log(x);
  const double ln_pb = static_cast<double>(point.n) * std::log(point.eta);
  const double ln_q = std::log1p(-point.lambda_mag * point.lambda_mag) -
                      std::log1p(-x);
  const double ln_pprime = std::log(m) + (m - 1.0) * ln_x;
  const double ln_pstar = ln_p_star(x, point.m);

  const double a = point.ln_r;
  const double b = ln_pb - ln_q - ln_pprime;
  const double c = ln_pb - ln_q - ln_pstar;
  const double tol =
      1e-12 * std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
  return ChainCheck{a <= b + tol && b <= c + tol, false};
}

}  // namespace entdist::compare
