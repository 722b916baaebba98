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

#pragma once

// Channel representations: Kraus sets, normalized Choi states and the affine
// Bloch picture of qubit channels, plus the structural predicates built on
// them (complete positivity, unitality, measure-and-prepare membership).
//
// Choi convention: eta = (1/D) sum_ij |i><j| (x) M(|i><j|), i.e. the Choi
// *state* 1 (x) M (|phi+><phi+|) with trace 1. The input system is the first
// tensor factor. The unnormalized Choi matrix used elsewhere is D * eta.

#include <array>
#include <vector>

#include "cohmem/types.hpp"

namespace cohmem {

/// Hermitian, unit-trace, positive semidefinite D x D matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix rho, double tol = kDefaultTol);

  static DensityMatrix from_bloch(const Vec3& v);
  static DensityMatrix pure(const CVector& psi);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const CMatrix& matrix() const { return rho_; }
  /// Only meaningful for D = 2.
  Vec3 bloch() const;

 private:
  CMatrix rho_;
};

/// Real 3-vector with |v| <= 1.
class BlochVector {
 public:
  explicit BlochVector(const Vec3& v, double tol = kDefaultTol);
  const Vec3& vec() const { return v_; }

 private:
  Vec3 v_;
};

/// Trace-preserving Kraus decomposition, sum_l K_l^dagger K_l = 1.
class KrausSet {
 public:
  explicit KrausSet(std::vector<CMatrix> ops, double tol = kDefaultTol);

  int dim() const { return static_cast<int>(ops_.front().cols()); }
  const std::vector<CMatrix>& operators() const { return ops_; }
  CMatrix apply(const CMatrix& rho) const;

 private:
  std::vector<CMatrix> ops_;
};

/// Normalized Choi state of a trace-preserving Hermiticity-preserving map.
/// Positivity is *not* required; use is_completely_positive for that.
class ChoiMatrix {
 public:
  explicit ChoiMatrix(CMatrix eta, double tol = 1e-8);

  int dim() const { return dim_; }
  const CMatrix& matrix() const { return eta_; }

  /// M(X) = D Tr_A[(X^T (x) 1) eta].
  CMatrix apply(const CMatrix& x) const;
  /// Reduced state on the output system.
  CMatrix output_marginal() const;

 private:
  int dim_;
  CMatrix eta_;
};

/// Qubit channel in the Bloch picture, v -> lambda v + kappa.
struct AffineChannel {
  Mat3 lambda = Mat3::Identity();
  Vec3 kappa = Vec3::Zero();

  Vec3 apply(const Vec3& v) const { return lambda * v + kappa; }
  /// (*this) o inner: apply inner first.
  AffineChannel after(const AffineChannel& inner) const {
    return {lambda * inner.lambda, lambda * inner.kappa + kappa};
  }
  static AffineChannel rotation(const Mat3& r) { return {r, Vec3::Zero()}; }
};

/// Lambda = left * diag(sv) * right with sv ascending and non-negative.
/// `left` and `right` are orthogonal but may be improper; `orientation`
/// keeps sign(det Lambda), which is what complete positivity sees.
struct CanonicalChannel {
  Vec3 sv = Vec3::Zero();
  Vec3 kappa = Vec3::Zero();  // kappa in the left singular frame, components >= 0
  Mat3 left = Mat3::Identity();
  Mat3 right = Mat3::Identity();
  int orientation = 1;

  double signed_product() const { return orientation * sv.prod(); }
  /// Lambda in the frame where it is diagonal, singular values carrying the
  /// orientation sign on the largest entry.
  Vec3 signed_sv() const {
    Vec3 s = sv;
    s(2) *= orientation;
    return s;
  }
  AffineChannel reconstruct() const;
  /// Diagonal channel in its own frame (signed_sv, kappa).
  AffineChannel diagonal() const;
};

enum class PositivityMode { CP, MP };

/// Three polynomial conditions equivalent to Choi positivity for a qubit
/// channel in canonical form. MP mode flips the sign of every lambda_i,
/// which tests positivity of the partial transpose instead.
struct ConditionReport {
  PositivityMode mode = PositivityMode::CP;
  /// |k|^2 + |l|^2, |k|^2 + |l|^2 - 2 l1 l2 l3, and the quartic expression.
  std::array<double, 3> values{};
  /// Nonnegative exactly when the matching condition holds.
  std::array<double, 3> slack{};
  std::array<double, 3> d{};
  Vec3 k_sq = Vec3::Zero();
  Vec3 l_sq = Vec3::Zero();
  std::array<bool, 3> pass{};

  bool all_pass() const { return pass[0] && pass[1] && pass[2]; }
};

CMatrix pauli(int i);  // 0 -> I, 1..3 -> X, Y, Z

CMatrix partial_trace_input(const CMatrix& m, int dim);
CMatrix partial_trace_output(const CMatrix& m, int dim);
CMatrix partial_transpose_output(const CMatrix& m, int dim);

ChoiMatrix choi_from_kraus(const KrausSet& k);
ChoiMatrix affine_to_choi(const AffineChannel& a);
/// Throws UnsupportedError unless c.dim() == 2.
AffineChannel affine_from_choi(const ChoiMatrix& c);
AffineChannel affine_from_kraus(const KrausSet& k);

double min_eigenvalue(const CMatrix& hermitian);
bool is_completely_positive(const ChoiMatrix& c, double tol = kDefaultTol);
bool is_completely_positive(const AffineChannel& a, double tol = kDefaultTol);

ConditionReport descartes_conditions(const CanonicalChannel& cc, PositivityMode mode,
                                     double tol = kDefaultTol);
ConditionReport descartes_conditions(const Vec3& signed_lambda, const Vec3& kappa,
                                     PositivityMode mode, double tol = kDefaultTol);

/// Qubit only: 1/2 - eta >= 0. Throws UnsupportedError for D > 2.
bool is_measure_and_prepare(const ChoiMatrix& c, double tol = kDefaultTol);
bool is_measure_and_prepare(const AffineChannel& a, double tol = kDefaultTol);
/// Positive partial transpose of eta. Exact for D = 2, only a necessary
/// condition for entanglement breaking when D > 2.
bool has_positive_partial_transpose(const ChoiMatrix& c, double tol = kDefaultTol);

bool is_unital(const AffineChannel& a, double tol = kDefaultTol);

CanonicalChannel canonicalize(const AffineChannel& a);

/// Rotation of the Bloch ball induced by rho -> U rho U^dagger.
Mat3 bloch_rotation(const CMatrix& u);
/// Some SU(2) element inducing the proper rotation r.
CMatrix unitary_from_rotation(const Mat3& r);

}  // namespace cohmem
