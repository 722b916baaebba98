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

// Coherence quantifiers with respect to a basis {U|j>}: the normalized
// robustness of coherence (closed form for qubits, convex program for
// D <= 4), the normalized l1-norm of coherence and the fidelity witness bound.

#include <vector>

#include "cohmem/channel.hpp"

namespace cohmem {

/// Qubit basis identified by its Bloch axis; the basis states sit at +-n.
class BasisAxis {
 public:
  /// Normalizes `direction`; throws ValidationError on zero or non-finite input.
  explicit BasisAxis(const Vec3& direction);
  static BasisAxis x() { return BasisAxis(Vec3::UnitX()); }
  static BasisAxis y() { return BasisAxis(Vec3::UnitY()); }
  static BasisAxis z() { return BasisAxis(Vec3::UnitZ()); }

  const Vec3& n() const { return n_; }

 private:
  Vec3 n_;
};

/// Orthonormal basis |b_j> = U|j> given by a unitary.
class GeneralBasis {
 public:
  explicit GeneralBasis(CMatrix unitary, double tol = 1e-9);
  static GeneralBasis identity(int dim);

  int dim() const { return static_cast<int>(u_.rows()); }
  const CMatrix& unitary() const { return u_; }

 private:
  CMatrix u_;
};

/// Phases alpha_j, wrapped into [0, 2 pi).
class PhaseVector {
 public:
  explicit PhaseVector(std::vector<double> alpha);
  static PhaseVector zeros(int dim) { return PhaseVector(std::vector<double>(dim, 0.0)); }

  int dim() const { return static_cast<int>(alpha_.size()); }
  const std::vector<double>& alpha() const { return alpha_; }
  /// Diagonal unitary with entries e^{i alpha_j}.
  CMatrix diagonal() const;

 private:
  std::vector<double> alpha_;
};

/// U Z_alpha |+>, a maximally coherent state in basis U.
DensityMatrix max_coherent_state(const GeneralBasis& b, const PhaseVector& p);

/// Distance of v from the line through the origin along the axis.
double robustness_qubit(const BlochVector& v, const BasisAxis& axis);

struct RobustnessSolution {
  double value = 0.0;
  /// Certified bracket on `value` from the dual solution.
  double lower = 0.0;
  double upper = 0.0;
  int newton_steps = 0;
};

/// Solves min { sum_i d_i : diag(d) >= U^dagger rho U } by a log-barrier
/// interior-point method in the D variables d_i and returns
/// (min - 1) / (D - 1). Throws NumericError if the duality gap is not below
/// `tol` within `max_newton_steps`.
RobustnessSolution robustness_general_solve(const DensityMatrix& rho, const GeneralBasis& b,
                                            double tol = 1e-10, int max_newton_steps = 10000);
double robustness_general(const DensityMatrix& rho, const GeneralBasis& b, double tol = 1e-10);

double l1_coherence(const DensityMatrix& rho, const GeneralBasis& b);

/// (D <psi|rho|psi> - 1) / (D - 1), i.e. -Tr(W rho)/(D-1) with W = 1 - D|psi><psi|.
/// `psi` must be pure and maximally coherent in the computational basis.
double witness_lower_bound(const DensityMatrix& rho, const DensityMatrix& psi);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const CMatrix& hermitian);

}  // namespace cohmem
