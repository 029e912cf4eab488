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

#include "entdist/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace entdist::states {

namespace {

constexpr double kListSumTol = 1e-12;

}  // namespace

SchmidtSpectrum SchmidtSpectrum::finite_uniform(std::int64_t m) {
  if (m < 1) {
    throw std::invalid_argument("finite_uniform: rank must be >= 1, got " +
                                std::to_string(m));
  }
  SchmidtSpectrum s;
  s.kind_ = Kind::kFiniteUniform;
  s.uniform_m_ = m;
  return s;
}

SchmidtSpectrum SchmidtSpectrum::geometric(double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("geometric: ratio must lie in [0,1), got " +
                                std::to_string(ratio));
  }
  SchmidtSpectrum s;
  s.kind_ = Kind::kGeometric;
  s.ratio_ = ratio;
  return s;
}

SchmidtSpectrum SchmidtSpectrum::explicit_list(
    std::vector<double> squared_coeffs) {
  if (squared_coeffs.empty()) {
    throw std::invalid_argument("explicit_list: empty coefficient list");
  }
  for (double c : squared_coeffs) {
    if (!(c >= 0.0)) {
      throw std::invalid_argument(
          "explicit_list: coefficients must be nonnegative");
    }
  }
  std::sort(squared_coeffs.begin(), squared_coeffs.end(), std::greater<>());

  // Suffix sums accumulated from the back keep small coefficients exact.
  std::vector<double> suffix(squared_coeffs.size());
  double acc = 0.0;
  for (std::size_t i = squared_coeffs.size(); i-- > 0;) {
    acc += squared_coeffs[i];
    suffix[i] = acc;
  }
  if (std::abs(suffix[0] - 1.0) > kListSumTol) {
    std::ostringstream msg;
    msg << "explicit_list: squared coefficients must sum to 1 within "
        << kListSumTol << ", got " << suffix[0];
    throw std::invalid_argument(msg.str());
  }

  SchmidtSpectrum s;
  s.kind_ = Kind::kExplicitList;
  s.coeffs_ = std::move(squared_coeffs);
  s.suffix_ = std::move(suffix);
  return s;
}

double SchmidtSpectrum::tail(std::int64_t i) const {
  if (i < 0) {
    throw std::invalid_argument("tail: index must be >= 0");
  }
  switch (kind_) {
    case Kind::kFiniteUniform:
      if (i >= uniform_m_) return 0.0;
      return static_cast<double>(uniform_m_ - i) /
             static_cast<double>(uniform_m_);
    case Kind::kGeometric:
      return std::pow(ratio_, static_cast<double>(i));
    case Kind::kExplicitList:
      if (i >= static_cast<std::int64_t>(suffix_.size())) return 0.0;
      return suffix_[static_cast<std::size_t>(i)];
  }
  return 0.0;  // unreachable
}

double SchmidtSpectrum::coefficient_sq(std::int64_t i) const {
  if (i < 0) {
    throw std::invalid_argument("coefficient_sq: index must be >= 0");
  }
  switch (kind_) {
    case Kind::kFiniteUniform:
      if (i >= uniform_m_) return 0.0;
      return 1.0 / static_cast<double>(uniform_m_);
    case Kind::kGeometric:
      return (1.0 - ratio_) * std::pow(ratio_, static_cast<double>(i));
    case Kind::kExplicitList:
      if (i >= static_cast<std::int64_t>(coeffs_.size())) return 0.0;
      return coeffs_[static_cast<std::size_t>(i)];
  }
  return 0.0;  // unreachable
}

bool SchmidtSpectrum::finite_rank() const noexcept {
  return kind_ != Kind::kGeometric || ratio_ == 0.0;
}

std::int64_t SchmidtSpectrum::rank() const {
  switch (kind_) {
    case Kind::kFiniteUniform:
      return uniform_m_;
    case Kind::kGeometric:
      if (ratio_ == 0.0) return 1;
      throw std::logic_error("rank: geometric spectrum has infinite rank");
    case Kind::kExplicitList: {
      auto it = std::find_if(coeffs_.rbegin(), coeffs_.rend(),
                             [](double c) { return c > 0.0; });
      return static_cast<std::int64_t>(coeffs_.rend() - it);
    }
  }
  return 0;  // unreachable
}

TwinBeam::TwinBeam(double lambda_mag) : lambda_mag_(lambda_mag) {
  if (!(lambda_mag >= 0.0 && lambda_mag < 1.0)) {
    throw std::invalid_argument(
        "TwinBeam: |lambda| must lie in [0,1), got " +
        std::to_string(lambda_mag));
  }
}

double TwinBeam::gain() const noexcept {
  return 1.0 / (1.0 - lambda_mag_ * lambda_mag_);
}

TwinBeam TwinBeam::loss_rescaled(double eta) const {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("loss_rescaled: eta must lie in [0,1], got " +
                                std::to_string(eta));
  }
  return TwinBeam(std::sqrt(eta) * lambda_mag_);
}

SchmidtSpectrum TwinBeam::spectrum() const {
  return SchmidtSpectrum::geometric(lambda_mag_ * lambda_mag_);
}

MaxEntangled::MaxEntangled(std::int64_t m) : m_(m) {
  if (m < 1) {
    throw std::invalid_argument("MaxEntangled: rank must be >= 1, got " +
                                std::to_string(m));
  }
}

SchmidtSpectrum MaxEntangled::spectrum() const {
  return SchmidtSpectrum::finite_uniform(m_);
}

Eigen::VectorXcd ebit_vector(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("ebit_vector: cutoff must be >= 2, got " +
                                std::to_string(dim));
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(dim) * static_cast<Eigen::Index>(dim));
  const double amp = 1.0 / std::sqrt(2.0);
  psi(0 * dim + 1) = amp;  // |0>_a |1>_b
  psi(1 * dim + 0) = amp;  // |1>_a |0>_b
  return psi;
}

Eigen::VectorXcd twin_beam_vector(const TwinBeam& tb, int dim,
                                  double tail_tol) {
  if (dim < 1) {
    throw std::invalid_argument("twin_beam_vector: cutoff must be >= 1");
  }
  const double lambda = tb.lambda_mag();
  const double x = lambda * lambda;
  if (std::pow(x, static_cast<double>(dim)) > tail_tol) {
    std::ostringstream msg;
    msg << "twin_beam_vector: cutoff " << dim << " leaves tail mass "
        << std::pow(x, static_cast<double>(dim)) << " above budget "
        << tail_tol << "; need dim >= "
        << required_twin_beam_cutoff(lambda, tail_tol);
    throw std::invalid_argument(msg.str());
  }
  Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(dim) * static_cast<Eigen::Index>(dim));
  const double c = std::sqrt(1.0 - x);
  double amp = c;
  for (int i = 0; i < dim; ++i) {
    chi(static_cast<Eigen::Index>(i) * dim + i) = amp;
    amp *= lambda;
  }
  return chi;
}

int required_twin_beam_cutoff(double lambda_mag, double tail_tol) {
  if (!(lambda_mag >= 0.0 && lambda_mag < 1.0)) {
    throw std::invalid_argument(
        "required_twin_beam_cutoff: |lambda| must lie in [0,1)");
  }
  if (!(tail_tol > 0.0)) {
    throw std::invalid_argument(
        "required_twin_beam_cutoff: tolerance must be positive");
  }
  const double x = lambda_mag * lambda_mag;
  if (x == 0.0) return 1;
  int dim = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(x)));
  dim = std::max(dim, 1);
  while (std::pow(x, static_cast<double>(dim)) > tail_tol) ++dim;
  return dim;
}

}  // namespace entdist::states
