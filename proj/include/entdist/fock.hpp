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

#include <complex>

#include <Eigen/Dense>

#include "entdist/states.hpp"

// Brute-force linear algebra on truncated Fock spaces. Everything here is a
// direct evaluation: photon-loss Kraus operators as dense matrices, channel
// application as the explicit Kraus sum, and the decomposition checks as
// matrix arithmetic plus an eigensolve. This module is the independent
// verification route for the closed forms in states/, locc/ and compare/.
namespace entdist::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerances shared by the validation routines. The eigenvalue floor absorbs
// eigensolver rounding on rank-deficient matrices; it is a test contract,
// not a physical claim.
inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

/// Single-mode attenuation channel with energy transmissivity eta in [0,1].
class LossChannel {
 public:
  explicit LossChannel(double eta);
  double eta() const noexcept { return eta_; }

 private:
  double eta_;
};

/// Dense operator on the truncated Fock space spanned by |0..dim-1>.
struct FockOperator {
  Matrix entries;
  int dim() const noexcept { return static_cast<int>(entries.rows()); }
};

/// Dense two-mode density matrix on a finite Fock cutoff per mode, with the
/// index layout |a,b> -> a*dim_b + b. Construction enforces Hermiticity,
/// positivity (eigenvalues >= kEigenvalueFloor) and a trace in
/// [1 - tail_tol, 1]: the trace may fall short of 1 only by truncation.
class BipartiteDensity {
 public:
  static BipartiteDensity from_matrix(Matrix entries, int dim_a, int dim_b,
                                      double tail_tol = kDefaultTailTol);
  static BipartiteDensity from_pure(const Vector& psi, int dim_a, int dim_b,
                                    double tail_tol = kDefaultTailTol);

  const Matrix& entries() const noexcept { return entries_; }
  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  double trace_real() const { return entries_.trace().real(); }

 private:
  BipartiteDensity(Matrix entries, int dim_a, int dim_b)
      : entries_(std::move(entries)), dim_a_(dim_a), dim_b_(dim_b) {}

  friend BipartiteDensity apply_loss(const BipartiteDensity& rho,
                                     const LossChannel& channel_a,
                                     const LossChannel& channel_b);

  Matrix entries_;
  int dim_a_;
  int dim_b_;
};

/// Photon-loss Kraus operator for n lost photons on a dim-dimensional
/// truncated Fock space. Matrix elements are the binomial form
///   <k-n| V_n |k> = sqrt(C(k,n)) (1-eta)^{n/2} eta^{(k-n)/2},
/// which is algebraically equal to the operator product
/// (eta^{-1}-1)^{n/2}/sqrt(n!) a^n eta^{(a^dag a)/2} but stays finite for
/// small eta. Rejects eta == 0 with n >= 1, where the operator-product
/// prefactor is singular; the eta == 0 channel itself is handled by
/// apply_loss as the total-loss branch.
FockOperator kraus_operator(int n, const LossChannel& channel, int dim);

/// Applies the loss channel to a single-mode density matrix via the full
/// Kraus sum (truncated at n = dim-1; higher terms annihilate the space).
/// The input must be Hermitian, positive semidefinite and of trace within
/// [1 - tail_tol, 1].
Matrix apply_loss(const Matrix& rho, const LossChannel& channel,
                  double tail_tol = kDefaultTailTol);

/// Applies independent loss channels to the two modes of a bipartite
/// density matrix.
BipartiteDensity apply_loss(const BipartiteDensity& rho,
                            const LossChannel& channel_a,
                            const LossChannel& channel_b);

/// Residual of the normal-ordered scaling identity
///   Tr[L[rho] a^dag^p a^q] = eta^{(p+q)/2} Tr[rho a^dag^p a^q].
/// Requires p + q <= dim - 1 so the truncated operator products are exact.
/// The p = q = 1 case is the energy attenuation law.
double normal_order_scaling_residual(int p, int q, const Matrix& rho,
                                     const LossChannel& channel);

/// Report of the twin-beam loss decomposition
///   (L x L)[|chi(lambda)><chi(lambda)|] = q |chi(s)><chi(s)| + sigma,
/// with s = sqrt(eta) lambda and q = (1-lambda^2)/(1-eta lambda^2).
struct TwinBeamDecomposition {
  double q_formula;      // (1-lambda^2)/(1-eta lambda^2)
  double q_measured;     // weight of the zero-loss Kraus branch
  double branch_overlap; // |<chi(s)|branch>| for the normalised branch
  double sigma_min_eig;  // smallest eigenvalue of the residual sigma
  double sigma_trace;    // Tr[sigma]; equals 1 - q up to rounding
};

/// Verifies the decomposition above by direct channel application on a
/// truncated space. Here channel.eta() is the end-to-end attenuation budget
/// of the link: the twin-beam source sits midway, so each mode traverses an
/// arm of transmissivity sqrt(eta), and the zero-loss branch survives as
/// the twin beam with parameter sqrt(eta)*lambda. The input twin beam is
/// truncated at `dim` and normalised; cutoffs whose neglected tail mass
/// (lambda^2)^dim exceeds tail_tol are rejected with the required cutoff in
/// the message.
TwinBeamDecomposition twin_beam_loss_decomposition(
    double lambda_mag, const LossChannel& channel, int dim,
    double tail_tol = kDefaultTailTol);

/// Largest deviation of sum_{n<=k_max} V_n^dag V_n from the identity on the
/// subspace spanned by |0..k_max>, with operators built at cutoff dim
/// (dim >= 2*k_max keeps the protected subspace exact).
double kraus_completeness_residual(const LossChannel& channel, int k_max,
                                   int dim);

// Small helpers shared by the verification command and the test suites.
Matrix annihilation_operator(int dim);
Matrix reduced_mode_a(const Matrix& rho, int dim_a, int dim_b);
Matrix reduced_mode_b(const Matrix& rho, int dim_a, int dim_b);
double mean_photon(const Matrix& rho);
double mean_photon_a(const Matrix& rho, int dim_a, int dim_b);
double mean_photon_b(const Matrix& rho, int dim_a, int dim_b);
double min_eigenvalue(const Matrix& hermitian);

}  // namespace entdist::fock
