// Copyright 2026 The cohmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cohmem/sinkhorn.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "cohmem/error.hpp"

namespace cohmem {
namespace {

CVector phases_of(const CVector& v) {
  CVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    out(i) = m > 0.0 ? v(i) / m : Complex(1.0);
  }
  return out;
}

// Max deviation of |(U x)_j| from 1 for a unimodular x.
double modulus_defect(const CMatrix& u, const CVector& x) {
  return ((u * x).cwiseAbs().array() - 1.0).abs().maxCoeff();
}

// Gauss-Newton on the phases of x for r_j = |(U x)_j|^2 - 1. The global phase
// is left free; the pseudo-inverse handles the resulting rank deficiency.
CVector polish(const CMatrix& u, CVector x, int steps) {
  const int d = static_cast<int>(x.size());
  for (int s = 0; s < steps; ++s) {
    const CVector y = u * x;
    Eigen::VectorXd r(d);
    Eigen::MatrixXd jac(d, d);
    for (int j = 0; j < d; ++j) {
      r(j) = std::norm(y(j)) - 1.0;
      for (int k = 0; k < d; ++k) jac(j, k) = 2.0 * std::real(std::conj(y(j)) * Complex(0.0, 1.0) * u(j, k) * x(k));
    }
    if (r.lpNorm<Eigen::Infinity>() < 1e-15) break;
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
    CVector trial = x;
    for (int k = 0; k < d; ++k) trial(k) *= std::polar(1.0, step(k));
    if (modulus_defect(u, trial) >= modulus_defect(u, x)) break;
    x = trial;
  }
  return x;
}

// Alternating projections between unimodular x and unimodular U x, started
// from beta (the phases of U x). Damped once the defect stops decreasing.
CVector alternate(const CMatrix& u, CVector y, int iterations, double tol) {
  CVector x = phases_of(u.adjoint() * y);
  double last = modulus_defect(u, x);
  double damping = 1.0;
  for (int it = 0; it < iterations && last > tol; ++it) {
    const CVector target = phases_of(u.adjoint() * phases_of(u * x));
    x = phases_of((1.0 - damping) * x + damping * target);
    const double defect = modulus_defect(u, x);
    if (defect > last) damping = std::max(0.1, 0.5 * damping);
    last = defect;
    if (it % 64 == 63 && last < 1e-6) {
      x = polish(u, x, 20);
      last = modulus_defect(u, x);
    }
  }
  return polish(u, x, 20);
}

}  // namespace

CommonMaxCoherent common_max_coherent(const GeneralBasis& basis, const SinkhornOptions& opts) {
  const CMatrix& u = basis.unitary();
  const int d = basis.dim();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  CVector best_x;
  double best_defect = std::numeric_limits<double>::infinity();
  CVector start = CVector::Ones(d);
  for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
    const CVector x = alternate(u, start, opts.max_iterations, opts.tol);
    const double defect = modulus_defect(u, x);
    if (defect < best_defect) best_defect = defect, best_x = x;
    if (best_defect <= opts.tol) break;
    for (int j = 0; j < d; ++j) start(j) = std::polar(1.0, phase(rng));
  }

  // Z_alpha |+> = x / sqrt(D), U Z_alpha |+> = Z_beta |+>. Fix alpha_0 = 0.
  const Complex ref = best_x(0);
  const CVector x = best_x * std::conj(ref);
  const CVector y = phases_of(u * x);
  std::vector<double> alpha(d), beta(d);
  for (int j = 0; j < d; ++j) {
    alpha[j] = std::arg(x(j));
    beta[j] = std::arg(y(j));
  }
  CommonMaxCoherent out{PhaseVector(alpha), PhaseVector(beta), 0.0};
  const CVector plus = CVector::Ones(d) / std::sqrt(static_cast<double>(d));
  out.residual = (out.beta.diagonal().adjoint() * u * out.alpha.diagonal() * plus - plus).norm();
  if (!(out.residual <= std::max(opts.tol, 1e-15) * 10.0 * d)) {
    throw NumericError("Sinkhorn iteration did not converge", out.residual);
  }
  return out;
}

SinkhornDecomposition sinkhorn_decompose(const GeneralBasis& basis, const SinkhornOptions& opts) {
  const CommonMaxCoherent cm = common_max_coherent(basis, opts);
  const CMatrix za = cm.alpha.diagonal();
  const CMatrix zb = cm.beta.diagonal();
  // X = Z_beta^dagger U Z_alpha fixes |+>, so its rows and columns sum to 1.
  // U = Z_beta X Z_alpha^dagger; move beta_0 into Z2 so that z1(0,0) = 1.
  const Complex g = zb(0, 0);
  SinkhornDecomposition out;
  out.x = zb.adjoint() * basis.unitary() * za;
  out.z1 = zb * std::conj(g);
  out.z2 = g * za.adjoint();
  const int d = basis.dim();
  double res = 0.0;
  for (int i = 0; i < d; ++i) {
    res = std::max(res, std::abs(out.x.row(i).sum() - 1.0));
    res = std::max(res, std::abs(out.x.col(i).sum() - 1.0));
  }
  out.residual = res;
  return out;
}

}  // namespace cohmem
