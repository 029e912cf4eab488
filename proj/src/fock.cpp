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

#include "entdist/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace entdist::fock {

namespace {

// Nonzero diagonal strip of the n-photon-loss Kraus operator:
// strip[j] = <j| V_n |j+n> = sqrt(C(j+n,n)) (1-eta)^{n/2} eta^{j/2}.
// Built by the recurrence strip[j] = strip[j-1] * sqrt(eta (j+n)/j), which
// never forms the factorials.
Eigen::VectorXd kraus_strip(int n, double eta, int dim) {
  const int len = dim - n;
  Eigen::VectorXd strip(std::max(len, 0));
  if (len <= 0) return strip;
  strip(0) = std::pow(1.0 - eta, 0.5 * n);
  for (int j = 1; j < len; ++j) {
    strip(j) = strip(j - 1) *
               std::sqrt(eta * static_cast<double>(j + n) /
                         static_cast<double>(j));
  }
  return strip;
}

void require_hermitian(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is not square");
  }
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitianTol) {
    std::ostringstream msg;
    msg << who << ": matrix deviates from Hermitian by " << dev;
    throw std::invalid_argument(msg.str());
  }
}

void require_density(const Matrix& m, double tail_tol, const char* who) {
  require_hermitian(m, who);
  const double tr = m.trace().real();
  if (tr < 1.0 - tail_tol - 1e-12 || tr > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << who << ": trace " << tr << " outside [1 - " << tail_tol << ", 1]";
    throw std::invalid_argument(msg.str());
  }
  const double lo = min_eigenvalue(m);
  if (lo < kEigenvalueFloor) {
    std::ostringstream msg;
    msg << who << ": matrix is not positive semidefinite (min eigenvalue "
        << lo << ")";
    throw std::invalid_argument(msg.str());
  }
}

// Applies the loss channel to mode a of a (dim_a*dim_b)-dimensional matrix.
// In block form (dim_b x dim_b blocks indexed by the mode-a quanta) the
// Kraus sum reads
//   out[a,a'] += strip_n[a] strip_n[a'] rho[a+n, a'+n],
// which exploits that each V_n is a single diagonal strip.
Matrix apply_mode_a(const Matrix& rho, double eta, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  if (eta == 0.0) {
    // Total loss: mode a collapses onto the vacuum.
    for (int a = 0; a < dim_a; ++a) {
      out.block(0, 0, dim_b, dim_b) +=
          rho.block(a * dim_b, a * dim_b, dim_b, dim_b);
    }
    return out;
  }
  for (int n = 0; n < dim_a; ++n) {
    if (n > 0 && eta == 1.0) break;  // lossless channel has V_0 only
    const Eigen::VectorXd strip = kraus_strip(n, eta, dim_a);
    for (int a = 0; a + n < dim_a; ++a) {
      for (int ap = 0; ap + n < dim_a; ++ap) {
        out.block(a * dim_b, ap * dim_b, dim_b, dim_b).noalias() +=
            (strip(a) * strip(ap)) *
            rho.block((a + n) * dim_b, (ap + n) * dim_b, dim_b, dim_b);
      }
    }
  }
  return out;
}

// Same for mode b; the strip acts inside each dim_b x dim_b block.
Matrix apply_mode_b(const Matrix& rho, double eta, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  if (eta == 0.0) {
    for (int a = 0; a < dim_a; ++a) {
      for (int ap = 0; ap < dim_a; ++ap) {
        Complex acc = 0.0;
        for (int j = 0; j < dim_b; ++j) {
          acc += rho(a * dim_b + j, ap * dim_b + j);
        }
        out(a * dim_b, ap * dim_b) = acc;
      }
    }
    return out;
  }
  for (int n = 0; n < dim_b; ++n) {
    if (n > 0 && eta == 1.0) break;
    const Eigen::VectorXd strip = kraus_strip(n, eta, dim_b);
    const int len = dim_b - n;
    const Eigen::MatrixXd outer = strip * strip.transpose();
    for (int a = 0; a < dim_a; ++a) {
      for (int ap = 0; ap < dim_a; ++ap) {
        out.block(a * dim_b, ap * dim_b, len, len) +=
            outer.cwiseProduct(
                rho.block(a * dim_b + n, ap * dim_b + n, len, len));
      }
    }
  }
  return out;
}

Matrix matrix_power(const Matrix& m, int p) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) out = out * m;
  return out;
}

}  // namespace

LossChannel::LossChannel(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("LossChannel: eta must lie in [0,1], got " +
                                std::to_string(eta));
  }
}

BipartiteDensity BipartiteDensity::from_matrix(Matrix entries, int dim_a,
                                               int dim_b, double tail_tol) {
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument("BipartiteDensity: cutoffs must be >= 1");
  }
  const Eigen::Index n =
      static_cast<Eigen::Index>(dim_a) * static_cast<Eigen::Index>(dim_b);
  if (entries.rows() != n || entries.cols() != n) {
    throw std::invalid_argument(
        "BipartiteDensity: matrix size does not match dim_a * dim_b");
  }
  require_density(entries, tail_tol, "BipartiteDensity");
  return BipartiteDensity(std::move(entries), dim_a, dim_b);
}

BipartiteDensity BipartiteDensity::from_pure(const Vector& psi, int dim_a,
                                             int dim_b, double tail_tol) {
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument("BipartiteDensity: cutoffs must be >= 1");
  }
  const Eigen::Index n =
      static_cast<Eigen::Index>(dim_a) * static_cast<Eigen::Index>(dim_b);
  if (psi.size() != n) {
    throw std::invalid_argument(
        "BipartiteDensity: vector size does not match dim_a * dim_b");
  }
  const double norm2 = psi.squaredNorm();
  if (norm2 < 1.0 - tail_tol - 1e-12 || norm2 > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "BipartiteDensity: squared norm " << norm2 << " outside [1 - "
        << tail_tol << ", 1]";
    throw std::invalid_argument(msg.str());
  }
  Matrix m = psi * psi.adjoint();
  return BipartiteDensity(std::move(m), dim_a, dim_b);
}

FockOperator kraus_operator(int n, const LossChannel& channel, int dim) {
  if (n < 0) {
    throw std::invalid_argument("kraus_operator: n must be >= 0");
  }
  if (dim < 1) {
    throw std::invalid_argument("kraus_operator: dim must be >= 1");
  }
  if (channel.eta() == 0.0 && n >= 1) {
    throw std::invalid_argument(
        "kraus_operator: eta = 0 with n >= 1 is singular; the total-loss "
        "channel is handled by apply_loss directly");
  }
  Matrix m = Matrix::Zero(dim, dim);
  if (n < dim) {
    const Eigen::VectorXd strip = kraus_strip(n, channel.eta(), dim);
    for (int j = 0; j + n < dim; ++j) {
      m(j, j + n) = strip(j);
    }
  }
  return FockOperator{std::move(m)};
}

Matrix apply_loss(const Matrix& rho, const LossChannel& channel,
                  double tail_tol) {
  require_density(rho, tail_tol, "apply_loss");
  const int dim = static_cast<int>(rho.rows());
  return apply_mode_b(rho, channel.eta(), 1, dim);
}

BipartiteDensity apply_loss(const BipartiteDensity& rho,
                            const LossChannel& channel_a,
                            const LossChannel& channel_b) {
  // Hermiticity and positivity hold by the type invariant; re-check the
  // cheap part only.
  require_hermitian(rho.entries(), "apply_loss");
  Matrix out =
      apply_mode_a(rho.entries(), channel_a.eta(), rho.dim_a(), rho.dim_b());
  out = apply_mode_b(out, channel_b.eta(), rho.dim_a(), rho.dim_b());
  return BipartiteDensity(std::move(out), rho.dim_a(), rho.dim_b());
}

double normal_order_scaling_residual(int p, int q, const Matrix& rho,
                                     const LossChannel& channel) {
  if (p < 0 || q < 0) {
    throw std::invalid_argument(
        "normal_order_scaling_residual: powers must be >= 0");
  }
  const int dim = static_cast<int>(rho.rows());
  if (p + q > dim - 1) {
    std::ostringstream msg;
    msg << "normal_order_scaling_residual: p + q = " << p + q
        << " exceeds the safe truncation window (dim - 1 = " << dim - 1
        << ")";
    throw std::invalid_argument(msg.str());
  }
  require_density(rho, kDefaultTailTol, "normal_order_scaling_residual");

  const Matrix a = annihilation_operator(dim);
  const Matrix op =
      matrix_power(a.adjoint(), p) * matrix_power(a, q);
  const Matrix lossy = apply_mode_b(rho, channel.eta(), 1, dim);
  const Complex lhs = (lossy * op).trace();
  const Complex rhs =
      std::pow(channel.eta(), 0.5 * (p + q)) * (rho * op).trace();
  return std::abs(lhs - rhs);
}

TwinBeamDecomposition twin_beam_loss_decomposition(double lambda_mag,
                                                   const LossChannel& channel,
                                                   int dim, double tail_tol) {
  const states::TwinBeam tb(lambda_mag);
  const double eta = channel.eta();
  const double x = lambda_mag * lambda_mag;

  // eta is the end-to-end attenuation budget of the link; the source sits
  // midway, so each mode traverses an arm of amplitude transmissivity
  // sqrt(eta). That is the convention under which the surviving zero-loss
  // branch is the twin beam with parameter sqrt(eta)*lambda and weight
  // (1-lambda^2)/(1-eta lambda^2).
  const double arm_eta = std::sqrt(eta);

  // twin_beam_vector enforces the truncation budget and reports the
  // required cutoff on violation.
  Vector chi = states::twin_beam_vector(tb, dim, tail_tol);
  chi /= chi.norm();

  const Matrix rho = chi * chi.adjoint();
  Matrix lossy = apply_mode_a(rho, arm_eta, dim, dim);
  lossy = apply_mode_b(lossy, arm_eta, dim, dim);

  // Zero-loss branch: V_0 = diag(arm_eta^{k/2}) on each mode, so |i,j>
  // picks up eta^{(i+j)/4}.
  Vector branch(chi.size());
  const double quarter_root = std::sqrt(arm_eta);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      branch(static_cast<Eigen::Index>(i) * dim + j) =
          chi(static_cast<Eigen::Index>(i) * dim + j) *
          std::pow(quarter_root, i + j);
    }
  }
  const double q_measured = branch.squaredNorm();

  Vector reference =
      states::twin_beam_vector(tb.loss_rescaled(eta), dim, tail_tol);
  reference /= reference.norm();
  const double overlap =
      std::abs(reference.dot(branch)) / branch.norm();

  const double q_formula = (1.0 - x) / (1.0 - eta * x);
  const Matrix sigma = lossy - q_formula * (reference * reference.adjoint());

  TwinBeamDecomposition result;
  result.q_formula = q_formula;
  result.q_measured = q_measured;
  result.branch_overlap = overlap;
  result.sigma_trace = sigma.trace().real();
  result.sigma_min_eig = min_eigenvalue(sigma);
  return result;
}

double kraus_completeness_residual(const LossChannel& channel, int k_max,
                                   int dim) {
  if (k_max < 0 || dim <= k_max) {
    throw std::invalid_argument(
        "kraus_completeness_residual: need 0 <= k_max < dim");
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (int n = 0; n <= k_max; ++n) {
    const Matrix v = kraus_operator(n, channel, dim).entries;
    sum += v.adjoint() * v;
  }
  const Matrix delta =
      sum.topLeftCorner(k_max + 1, k_max + 1) -
      Matrix::Identity(k_max + 1, k_max + 1);
  return delta.cwiseAbs().maxCoeff();
}

Matrix annihilation_operator(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("annihilation_operator: dim must be >= 1");
  }
  Matrix a = Matrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    a(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return a;
}

Matrix reduced_mode_a(const Matrix& rho, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i) {
    for (int ip = 0; ip < dim_a; ++ip) {
      Complex acc = 0.0;
      for (int j = 0; j < dim_b; ++j) {
        acc += rho(i * dim_b + j, ip * dim_b + j);
      }
      out(i, ip) = acc;
    }
  }
  return out;
}

Matrix reduced_mode_b(const Matrix& rho, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int j = 0; j < dim_b; ++j) {
    for (int jp = 0; jp < dim_b; ++jp) {
      Complex acc = 0.0;
      for (int i = 0; i < dim_a; ++i) {
        acc += rho(i * dim_b + j, i * dim_b + jp);
      }
      out(j, jp) = acc;
    }
  }
  return out;
}

double mean_photon(const Matrix& rho) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < rho.rows(); ++k) {
    acc += static_cast<double>(k) * rho(k, k).real();
  }
  return acc;
}

double mean_photon_a(const Matrix& rho, int dim_a, int dim_b) {
  double acc = 0.0;
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_b; ++j) {
      acc += static_cast<double>(i) * rho(i * dim_b + j, i * dim_b + j).real();
    }
  }
  return acc;
}

double mean_photon_b(const Matrix& rho, int dim_a, int dim_b) {
  double acc = 0.0;
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_b; ++j) {
      acc += static_cast<double>(j) * rho(i * dim_b + j, i * dim_b + j).real();
    }
  }
  return acc;
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian,
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("min_eigenvalue: eigensolver failed");
  }
  return solver.eigenvalues().minCoeff();
}

}  // namespace entdist::fock
