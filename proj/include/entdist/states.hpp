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
#include <vector>

#include <Eigen/Dense>

namespace entdist::states {

/// Ordered squared Schmidt coefficients of a bipartite pure state.
///
/// Three representations are supported:
///   - finite_uniform(M): M equal coefficients 1/M (maximally entangled states),
///   - geometric(x):      coefficients (1-x) x^n for n = 0, 1, ... (twin beams,
///                        with x the squared gain parameter),
///   - explicit_list:     a finite list, sorted nonincreasing at construction.
///
/// Tail sums are exact closed forms for the analytic kinds and precomputed
/// suffix sums for explicit lists.
class SchmidtSpectrum {
 public:
  enum class Kind { kFiniteUniform, kGeometric, kExplicitList };

  static SchmidtSpectrum finite_uniform(std::int64_t m);
  static SchmidtSpectrum geometric(double ratio);
  // Entries must be nonnegative and sum to 1 within 1e-12; they are sorted
  // nonincreasing at construction.
  static SchmidtSpectrum explicit_list(std::vector<double> squared_coeffs);

  Kind kind() const noexcept { return kind_; }

  /// Sum of squared coefficients from index i on. tail(0) == 1 and the
  /// sequence is nonincreasing in i.
  double tail(std::int64_t i) const;

  /// The i-th squared coefficient.
  double coefficient_sq(std::int64_t i) const;

  /// False only for geometric spectra with ratio > 0.
  bool finite_rank() const noexcept;

  /// Number of strictly positive coefficients; throws for infinite spectra.
  std::int64_t rank() const;

 private:
  SchmidtSpectrum() = default;

  Kind kind_ = Kind::kFiniteUniform;
  std::int64_t uniform_m_ = 1;
  double ratio_ = 0.0;
  std::vector<double> coeffs_;
  std::vector<double> suffix_;  // suffix_[i] = sum of coeffs_[i..]
};

/// Two-mode squeezed (twin-beam) state, parameterised by the magnitude of the
/// gain parameter. All derived quantities depend only on |lambda|, so the
/// complex phase is dropped at this boundary.
class TwinBeam {
 public:
  explicit TwinBeam(double lambda_mag);

  double lambda_mag() const noexcept { return lambda_mag_; }

  /// Parametric amplifier gain, (1 - lambda^2)^-1.
  double gain() const noexcept;

  /// The twin beam that survives an attenuation channel of transmissivity
  /// eta on both modes: lambda -> sqrt(eta) * lambda.
  TwinBeam loss_rescaled(double eta) const;

  /// Geometric Schmidt spectrum with ratio lambda^2.
  SchmidtSpectrum spectrum() const;

 private:
  double lambda_mag_;
};

/// Maximally entangled state of Schmidt rank M.
class MaxEntangled {
 public:
  explicit MaxEntangled(std::int64_t m);
  std::int64_t m() const noexcept { return m_; }
  SchmidtSpectrum spectrum() const;

 private:
  std::int64_t m_;
};

/// Single-photon entangled pair (|01> + |10>)/sqrt(2) on a dim x dim
/// two-mode Fock space, index layout |a,b> -> a*dim + b. Requires dim >= 2.
Eigen::VectorXcd ebit_vector(int dim);

/// Truncated twin beam with amplitudes sqrt(1-lambda^2) lambda^i on |i,i>.
/// Not renormalised: the squared norm is 1 - (lambda^2)^dim. Rejects cutoffs
/// whose neglected tail mass (lambda^2)^dim exceeds tail_tol.
Eigen::VectorXcd twin_beam_vector(const TwinBeam& tb, int dim,
                                  double tail_tol = 1e-12);

/// Smallest cutoff whose neglected twin-beam tail mass meets tail_tol.
int required_twin_beam_cutoff(double lambda_mag, double tail_tol);

}  // namespace entdist::states
