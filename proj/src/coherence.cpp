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

#include "cohmem/coherence.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "cohmem/error.hpp"

namespace cohmem {

BasisAxis::BasisAxis(const Vec3& direction) {
  const double norm = direction.norm();
  if (!direction.allFinite() || norm < 1e-300) throw ValidationError("basis axis must be a nonzero vector");
  n_ = direction / norm;
}

GeneralBasis::GeneralBasis(CMatrix unitary, double tol) : u_(std::move(unitary)) {
  if (u_.rows() != u_.cols() || u_.rows() < 1) throw ValidationError("basis unitary must be square");
  const double defect = (u_.adjoint() * u_ - CMatrix::Identity(u_.rows(), u_.cols())).cwiseAbs().maxCoeff();
  if (defect > tol) throw ValidationError("basis matrix is not unitary (defect " + std::to_string(defect) + ")");
}

GeneralBasis GeneralBasis::identity(int dim) { return GeneralBasis(CMatrix::Identity(dim, dim)); }

PhaseVector::PhaseVector(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (auto& a : alpha_) {
    if (!std::isfinite(a)) throw ValidationError("phase must be finite");
    a = std::fmod(a, two_pi);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a = 0.0;
  }
}

CMatrix PhaseVector::diagonal() const {
  CMatrix z = CMatrix::Zero(dim(), dim());
  for (int j = 0; j < dim(); ++j) z(j, j) = std::polar(1.0, alpha_[j]);
  return z;
}

DensityMatrix max_coherent_state(const GeneralBasis& b, const PhaseVector& p) {
  if (b.dim() != p.dim()) throw ValidationError("basis and phase vector dimensions differ");
  const CVector plus = CVector::Ones(b.dim()) / std::sqrt(static_cast<double>(b.dim()));
  return DensityMatrix::pure(b.unitary() * p.diagonal() * plus);
}

double robustness_qubit(const BlochVector& v, const BasisAxis& axis) {
  const Vec3& n = axis.n();
  return (v.vec() - v.vec().dot(n) * n).norm();
}

RobustnessSolution robustness_general_solve(const DensityMatrix& rho, const GeneralBasis& b, double tol,
                                            int max_newton_steps) {
  if (rho.dim() != b.dim()) throw ValidationError("state and basis dimensions differ");
  const int d = rho.dim();
  RobustnessSolution sol;
  if (d == 1) return sol;

  CMatrix r = b.unitary().adjoint() * rho.matrix() * b.unitary();
  r = 0.5 * (r + r.adjoint());
  const double lmax = Eigen::SelfAdjointEigenSolver<CMatrix>(r, Eigen::EigenvaluesOnly).eigenvalues()(d - 1);

  using Vec = Eigen::VectorXd;
  Vec x = Vec::Constant(d, lmax + 1.0);
  auto slack = [&](const Vec& v) {
    CMatrix s = -r;
    s.diagonal() += v.cast<Complex>();
    return s;
  };
  // Barrier objective t * sum(d) - log det S; +inf outside the interior.
  auto barrier = [&](const Vec& v, double t, Eigen::LLT<CMatrix>& llt) {
    llt.compute(slack(v));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const auto l = llt.matrixL();
    double logdet = 0.0;
    for (int i = 0; i < d; ++i) logdet += 2.0 * std::log(std::real(l(i, i)));
    return t * v.sum() - logdet;
  };

  // Gap in sum(d) we need, translated from the tolerance on the normalized value.
  const double gap_target = tol * (d - 1);
  double t = 1.0;
  Eigen::LLT<CMatrix> llt;
  double upper = x.sum();
  double lower = -std::numeric_limits<double>::infinity();
  while (true) {
    double phi = barrier(x, t, llt);
    for (int it = 0; it < 200; ++it) {
      if (++sol.newton_steps > max_newton_steps) {
        throw NumericError("robustness of coherence did not converge", (upper - lower) / (d - 1));
      }
      const CMatrix sinv = llt.solve(CMatrix::Identity(d, d));
      Vec g(d);
      Eigen::MatrixXd h(d, d);
      for (int i = 0; i < d; ++i) {
        g(i) = t - std::real(sinv(i, i));
        for (int j = 0; j < d; ++j) h(i, j) = std::norm(sinv(i, j));
      }
      const Vec step = -h.ldlt().solve(g);
      const double decrement = -g.dot(step);
      if (decrement < 1e-14) break;
      double alpha = 1.0;
      Eigen::LLT<CMatrix> trial;
      double phi_new = barrier(x + alpha * step, t, trial);
      while (!(phi_new <= phi - 0.25 * alpha * decrement) && alpha > 1e-12) {
        alpha *= 0.5;
        phi_new = barrier(x + alpha * step, t, trial);
      }
      if (!(phi_new < phi)) break;
      x += alpha * step;
      phi = phi_new;
      llt = trial;
    }
    // Dual point: Z = S^{-1}/t rescaled to unit diagonal is feasible for
    // max { Tr(r Z) : Z >= 0, Z_ii = 1 }.
    const CMatrix sinv = llt.solve(CMatrix::Identity(d, d));
    Vec scale(d);
    for (int i = 0; i < d; ++i) scale(i) = 1.0 / std::sqrt(std::real(sinv(i, i)));
    const CMatrix z = scale.cast<Complex>().asDiagonal() * sinv * scale.cast<Complex>().asDiagonal();
    lower = std::max(lower, std::real((r * z).trace()));
    upper = std::min(upper, x.sum());
    if (upper - lower <= gap_target) break;
    t *= 8.0;
  }
  auto normalize = [&](double s) { return std::clamp((s - 1.0) / (d - 1), 0.0, 1.0); };
  sol.upper = normalize(upper);
  sol.lower = normalize(lower);
  sol.value = 0.5 * (sol.upper + sol.lower);
  return sol;
}

double robustness_general(const DensityMatrix& rho, const GeneralBasis& b, double tol) {
  return robustness_general_solve(rho, b, tol).value;
}

double l1_coherence(const DensityMatrix& rho, const GeneralBasis& b) {
  if (rho.dim() != b.dim()) throw ValidationError("state and basis dimensions differ");
  const int d = rho.dim();
  if (d == 1) return 0.0;
  const CMatrix r = b.unitary().adjoint() * rho.matrix() * b.unitary();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) s += std::abs(r(i, j));
  return s / (d - 1);
}

double witness_lower_bound(const DensityMatrix& rho, const DensityMatrix& psi) {
  const int d = rho.dim();
  if (psi.dim() != d) throw ValidationError("witness state dimension differs");
  const CMatrix& p = psi.matrix();
  if (std::abs((p * p).trace().real() - 1.0) > 1e-8) throw ValidationError("witness state must be pure");
  for (int i = 0; i < d; ++i) {
    if (std::abs(p(i, i).real() - 1.0 / d) > 1e-8) {
      throw ValidationError("witness state must be maximally coherent in the reference basis");
    }
  }
  const double overlap = (p * rho.matrix()).trace().real();
  return (d * overlap - 1.0) / (d - 1);
}

double trace_norm(const CMatrix& hermitian) {
  const CMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  return Eigen::SelfAdjointEigenSolver<CMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().sum();
}

}  // namespace cohmem
