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

#include "cohmem/random.hpp"

#include <Eigen/QR>

namespace cohmem {
namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

// Orthonormal columns with the phase fix of Mezzadri, so the result is Haar.
CMatrix haar_isometry(int rows, int cols, Rng& rng) {
  const CMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

CMatrix random_unitary(int dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

CVector random_pure_state(int dim, Rng& rng) {
  CVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_density(int dim, Rng& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

KrausSet random_kraus(int dim, int rank, Rng& rng) {
  const CMatrix v = haar_isometry(dim * rank, dim, rng);
  std::vector<CMatrix> ops;
  for (int l = 0; l < rank; ++l) ops.push_back(v.block(l * dim, 0, dim, dim));
  return KrausSet(std::move(ops));
}

AffineChannel random_qubit_channel(Rng& rng) {
  std::uniform_int_distribution<int> rank(1, 4);
  return affine_from_kraus(random_kraus(2, rank(rng), rng));
}

AffineChannel random_unital_qubit_channel(Rng& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = count(rng);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = u(rng));
  AffineChannel out{Mat3::Zero(), Vec3::Zero()};
  for (int i = 0; i < n; ++i) out.lambda += (w[i] / total) * random_rotation(rng);
  return out;
}

Mat3 random_rotation(Rng& rng) { return bloch_rotation(random_unitary(2, rng)); }

Vec3 random_unit_vector(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

}  // namespace cohmem
