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

#include "cohmem/highdim.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cohmem/error.hpp"
#include "cohmem/random.hpp"

namespace cohmem {
namespace {

// <a| on the input factor: (D x D) matrix on the output.
CMatrix contract_input(const CMatrix& eta, const CVector& a, int d) {
  CMatrix out = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out += std::conj(a(i)) * a(j) * eta.block(i * d, j * d, d, d);
  return out;
}

CMatrix contract_output(const CMatrix& eta, const CVector& s, int d) {
  CMatrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = s.dot(eta.block(i * d, j * d, d, d) * s);
  return out;
}

std::pair<double, CVector> lowest(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

}  // namespace

CMatrix difference_choi(const ChoiMatrix& eta_m, const GeneralBasis& v) {
  const int d = eta_m.dim();
  if (v.dim() != d) throw ValidationError("unitary guess dimension differs from the channel");
  CVector phi(d * d);
  for (int i = 0; i < d; ++i) phi.segment(i * d, d) = v.unitary().col(i);
  phi /= std::sqrt(static_cast<double>(d));
  return eta_m.matrix() - phi * phi.adjoint();
}

HighDimEstimate qzero_lowerbound_highdim(const ChoiMatrix& eta_m, const GeneralBasis& v,
                                         const SeesawOptions& opts) {
  if (opts.starts < 1) throw ValidationError("see-saw needs at least one start");
  const int d = eta_m.dim();
  const CMatrix eta_k = difference_choi(eta_m, v);
  Rng rng(opts.seed);

  HighDimEstimate est;
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.starts; ++s) {
    CVector a = random_pure_state(d, rng);
    SeesawRun run;
    double prev = std::numeric_limits<double>::infinity();
    for (run.iterations = 1; run.iterations <= opts.max_iterations; ++run.iterations) {
      const auto [vs, svec] = lowest(contract_input(eta_k, a, d));
      const auto [va, avec] = lowest(contract_output(eta_k, svec, d));
      a = avec;
      (void)vs;
      if (std::abs(prev - va) < opts.tol) {
        prev = va;
        run.converged = true;
        break;
      }
      prev = va;
    }
    run.iterations = std::min(run.iterations, opts.max_iterations);
    run.lambda = d * prev;
    best = std::min(best, run.lambda);
    est.runs.push_back(run);
  }
  est.lambda = best;
  double spread = 0.0;
  for (const auto& r : est.runs) spread = std::max(spread, r.lambda - best);
  est.heuristic = spread > d * opts.tol * 10.0;
  est.q_zero_lb = (d * (1.0 + est.lambda) - 1.0) / (d - 1);
  return est;
}

GeneralBasis best_unitary_fit(const ChoiMatrix& eta_m) {
  const int d = eta_m.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(eta_m.matrix());
  const CVector top = es.eigenvectors().col(d * d - 1);
  CMatrix k(d, d);
  for (int i = 0; i < d; ++i) k.col(i) = top.segment(i * d, d);
  Eigen::JacobiSVD<CMatrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return GeneralBasis(svd.matrixU() * svd.matrixV().adjoint());
}

}  // namespace cohmem
