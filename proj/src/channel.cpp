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

#include "cohmem/channel.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "cohmem/error.hpp"

namespace cohmem {
namespace {

double hermiticity_defect(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

int exact_sqrt(Eigen::Index n) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? r : -1;
}

}  // namespace

CMatrix pauli(int i) {
  CMatrix p(2, 2);
  const Complex I1(0.0, 1.0);
  switch (i) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -I1, I1, 0; break;
    case 3: p << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli index");
  }
  return p;
}

DensityMatrix::DensityMatrix(CMatrix rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) throw ValidationError("density matrix must be square");
  if (hermiticity_defect(rho) > tol) throw ValidationError("density matrix is not Hermitian");
  rho_ = hermitian_part(rho);
  if (std::abs(rho_.trace().real() - 1.0) > tol) throw ValidationError("density matrix trace differs from 1");
  if (min_eigenvalue(rho_) < -tol) throw ValidationError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_bloch(const Vec3& v) {
  BlochVector checked(v);
  CMatrix rho = 0.5 * pauli(0);
  for (int i = 0; i < 3; ++i) rho += 0.5 * v(i) * pauli(i + 1);
  return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("zero state vector");
  const CVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

Vec3 DensityMatrix::bloch() const {
  if (dim() != 2) throw UnsupportedError("Bloch vector requires D = 2");
  Vec3 v;
  for (int i = 0; i < 3; ++i) v(i) = (rho_ * pauli(i + 1)).trace().real();
  return v;
}

BlochVector::BlochVector(const Vec3& v, double tol) : v_(v) {
  if (!v.allFinite() || v.norm() > 1.0 + tol) throw ValidationError("Bloch vector outside the unit ball");
}

KrausSet::KrausSet(std::vector<CMatrix> ops, double tol) : ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("Kraus set is empty");
  const auto d = ops_.front().cols();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& k : ops_) {
    if (k.rows() != d || k.cols() != d) throw ValidationError("Kraus operators must all be D x D");
    sum += k.adjoint() * k;
  }
  const double defect = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw ValidationError("Kraus set is not trace preserving (defect " + std::to_string(defect) + ")");
  }
}

CMatrix KrausSet::apply(const CMatrix& rho) const {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ops_) out += k * rho * k.adjoint();
  return out;
}

ChoiMatrix::ChoiMatrix(CMatrix eta, double tol) {
  if (eta.rows() != eta.cols()) throw ValidationError("Choi matrix must be square");
  dim_ = exact_sqrt(eta.rows());
  if (dim_ < 2) throw ValidationError("Choi matrix size must be D^2 with D >= 2");
  if (hermiticity_defect(eta) > tol) throw ValidationError("Choi matrix is not Hermitian");
  eta_ = hermitian_part(eta);
  if (std::abs(eta_.trace().real() - 1.0) > tol) throw ValidationError("Choi state trace differs from 1");
  const CMatrix marginal = partial_trace_output(eta_, dim_);
  const CMatrix target = CMatrix::Identity(dim_, dim_) / static_cast<double>(dim_);
  if ((marginal - target).cwiseAbs().maxCoeff() > tol) {
    throw ValidationError("Choi state input marginal is not 1/D (map is not trace preserving)");
  }
}

CMatrix ChoiMatrix::apply(const CMatrix& x) const {
  const int d = dim_;
  CMatrix out = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i) {
      if (x(k, i) == Complex(0.0)) continue;
      out += x(k, i) * eta_.block(k * d, i * d, d, d);
    }
  return static_cast<double>(d) * out;
}

CMatrix ChoiMatrix::output_marginal() const { return partial_trace_input(eta_, dim_); }

CMatrix partial_trace_input(const CMatrix& m, int dim) {
  CMatrix r = CMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) r += m.block(i * dim, i * dim, dim, dim);
  return r;
}

CMatrix partial_trace_output(const CMatrix& m, int dim) {
  CMatrix r(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r(i, j) = m.block(i * dim, j * dim, dim, dim).trace();
  return r;
}

CMatrix partial_transpose_output(const CMatrix& m, int dim) {
  CMatrix r(m.rows(), m.cols());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r.block(i * dim, j * dim, dim, dim) = m.block(i * dim, j * dim, dim, dim).transpose();
  return r;
}

ChoiMatrix choi_from_kraus(const KrausSet& k) {
  const int d = k.dim();
  CMatrix eta = CMatrix::Zero(d * d, d * d);
  for (const auto& op : k.operators()) {
    // |v> = sum_i |i> (x) K|i>
    CVector v(d * d);
    for (int i = 0; i < d; ++i) v.segment(i * d, d) = op.col(i);
    eta += v * v.adjoint();
  }
  return ChoiMatrix(eta / static_cast<double>(d));
}

ChoiMatrix affine_to_choi(const AffineChannel& a) {
  std::array<CMatrix, 4> s{pauli(0), pauli(1), pauli(2), pauli(3)};
  CMatrix image_of_identity = s[0];
  for (int i = 0; i < 3; ++i) image_of_identity += a.kappa(i) * s[i + 1];
  CMatrix eta = CMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CMatrix e = CMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      CMatrix out = 0.5 * e.trace() * image_of_identity;
      for (int c = 0; c < 3; ++c) {
        const Complex t = (e * s[c + 1]).trace();
        for (int r = 0; r < 3; ++r) out += 0.5 * t * a.lambda(r, c) * s[r + 1];
      }
      eta.block(i * 2, j * 2, 2, 2) = 0.5 * out;
    }
  return ChoiMatrix(eta);
}

AffineChannel affine_from_choi(const ChoiMatrix& c) {
  if (c.dim() != 2) throw UnsupportedError("affine form requires a qubit channel (D = 2)");
  AffineChannel a;
  const CMatrix id_image = c.apply(pauli(0));
  for (int r = 0; r < 3; ++r) a.kappa(r) = 0.5 * (pauli(r + 1) * id_image).trace().real();
  for (int col = 0; col < 3; ++col) {
    const CMatrix img = c.apply(pauli(col + 1));
    for (int r = 0; r < 3; ++r) a.lambda(r, col) = 0.5 * (pauli(r + 1) * img).trace().real();
  }
  return a;
}

AffineChannel affine_from_kraus(const KrausSet& k) { return affine_from_choi(choi_from_kraus(k)); }

double min_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_completely_positive(const ChoiMatrix& c, double tol) { return min_eigenvalue(c.matrix()) >= -tol; }

bool is_completely_positive(const AffineChannel& a, double tol) {
  return is_completely_positive(affine_to_choi(a), tol);
}

ConditionReport descartes_conditions(const Vec3& signed_lambda, const Vec3& kappa, PositivityMode mode,
                                     double tol) {
  ConditionReport r;
  r.mode = mode;
  const Vec3 l = mode == PositivityMode::MP ? Vec3(-signed_lambda) : signed_lambda;
  r.k_sq = kappa.cwiseAbs2();
  r.l_sq = l.cwiseAbs2();
  const double k2 = r.k_sq.sum();
  const double l2 = r.l_sq.sum();
  const double prod = l.prod();
  for (int i = 0; i < 3; ++i) r.d[i] = l2 - 2.0 * r.l_sq(i);

  r.values[0] = k2 + l2;
  r.values[1] = k2 + l2 - 2.0 * prod;
  double dsq = 0.0;
  for (double di : r.d) dsq += di * di;
  r.values[2] = (1.0 - k2) * (1.0 - k2) - 2.0 * (1.0 - k2) * l2 - 0.5 * l2 * l2 + 8.0 * prod + 0.5 * dsq -
                4.0 * r.k_sq.dot(r.l_sq);

  r.slack = {3.0 - r.values[0], 1.0 - r.values[1], r.values[2]};
  for (int i = 0; i < 3; ++i) r.pass[i] = r.slack[i] >= -tol;
  return r;
}

ConditionReport descartes_conditions(const CanonicalChannel& cc, PositivityMode mode, double tol) {
  return descartes_conditions(cc.signed_sv(), cc.kappa, mode, tol);
}

bool is_measure_and_prepare(const ChoiMatrix& c, double tol) {
  if (c.dim() != 2) {
    throw UnsupportedError(
        "measure-and-prepare test is exact only for D = 2; use has_positive_partial_transpose "
        "(necessary condition) for larger D");
  }
  const CMatrix m = 0.5 * CMatrix::Identity(4, 4) - c.matrix();
  return min_eigenvalue(m) >= -tol;
}

bool is_measure_and_prepare(const AffineChannel& a, double tol) {
  return is_measure_and_prepare(affine_to_choi(a), tol);
}

bool has_positive_partial_transpose(const ChoiMatrix& c, double tol) {
  return min_eigenvalue(partial_transpose_output(c.matrix(), c.dim())) >= -tol;
}

bool is_unital(const AffineChannel& a, double tol) { return a.kappa.norm() <= tol; }

CanonicalChannel canonicalize(const AffineChannel& a) {
  Eigen::JacobiSVD<Mat3> svd(a.lambda, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // Eigen returns descending singular values; reverse to ascending.
  CanonicalChannel cc;
  const Vec3 s = svd.singularValues();
  for (int i = 0; i < 3; ++i) {
    cc.sv(i) = s(2 - i);
    cc.left.col(i) = svd.matrixU().col(2 - i);
    cc.right.row(i) = svd.matrixV().col(2 - i).transpose();
  }
  cc.kappa = cc.left.transpose() * a.kappa;
  for (int i = 0; i < 3; ++i) {
    if (cc.kappa(i) < 0.0) {
      cc.kappa(i) = -cc.kappa(i);
      cc.left.col(i) = -cc.left.col(i);
      cc.right.row(i) = -cc.right.row(i);
    }
  }
  cc.orientation = cc.left.determinant() * cc.right.determinant() < 0.0 ? -1 : 1;
  return cc;
}

AffineChannel CanonicalChannel::reconstruct() const {
  return {left * sv.asDiagonal() * right, left * kappa};
}

AffineChannel CanonicalChannel::diagonal() const {
  const double a = left.determinant() < 0.0 ? -1.0 : 1.0;
  Vec3 k = kappa;
  k(2) *= a;
  return {signed_sv().asDiagonal(), k};
}

Mat3 bloch_rotation(const CMatrix& u) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * (pauli(i + 1) * u * pauli(j + 1) * u.adjoint()).trace().real();
  return r;
}

CMatrix unitary_from_rotation(const Mat3& r) {
  const Eigen::AngleAxisd aa(r);
  const Vec3 n = aa.axis();
  const double half = 0.5 * aa.angle();
  CMatrix u = std::cos(half) * pauli(0);
  for (int i = 0; i < 3; ++i) u += Complex(0.0, -std::sin(half) * n(i)) * pauli(i + 1);
  return u;
}

}  // namespace cohmem
