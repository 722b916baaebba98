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

#include "cohmem/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

namespace cohmem::geometry {
namespace {

template <int P>
SphereMax<P> maximize(const Eigen::Matrix<double, 3, P>& a, const Vec3& k) {
  using MatP = Eigen::Matrix<double, P, P>;
  using VecP = Eigen::Matrix<double, P, 1>;
  const MatP h = a.transpose() * a;
  const VecP g = a.transpose() * k;
  const Eigen::SelfAdjointEigenSolver<MatP> es(h);
  const VecP sigma = es.eigenvalues();
  const MatP& q = es.eigenvectors();
  const VecP gamma = q.transpose() * g;
  const double sigma_max = sigma(P - 1);
  const double gnorm = g.norm();
  const double k2 = k.squaredNorm();

  SphereMax<P> out;
  // Best of +-top eigenvector; exact when g vanishes, a safe floor otherwise.
  auto consider = [&](const VecP& cand) {
    const double v = (a * cand + k).squaredNorm();
    if (std::isfinite(v) && (!(out.value_sq >= 0.0) || v > out.value_sq)) {
      out.value_sq = v;
      out.u = cand;
    }
  };
  out.value_sq = -1.0;
  consider(q.col(P - 1));
  consider(-q.col(P - 1));
  if (gnorm <= 1e-15 * (1.0 + sigma_max + k2)) {
    out.value_sq = std::max(out.value_sq, sigma_max + k2);
    return out;
  }

  // Secular function sum gamma_i^2 / (mu - sigma_i)^2, decreasing on (sigma_max, inf).
  auto secular = [&](double mu) {
    double s = 0.0;
    for (int i = 0; i < P; ++i) {
      if (gamma(i) == 0.0) continue;
      const double den = mu - sigma(i);
      s += gamma(i) * gamma(i) / (den * den);
    }
    return s;
  };
  double lo = sigma_max;
  double hi = sigma_max + gnorm;
  for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (secular(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double mu = hi;
  VecP u = VecP::Zero();
  for (int i = 0; i < P; ++i) {
    if (gamma(i) == 0.0 || !(mu - sigma(i) > 0.0)) continue;
    u += (gamma(i) / (mu - sigma(i))) * q.col(i);
  }
  const double un = u.squaredNorm();
  if (un < 1.0) u += std::sqrt(1.0 - un) * q.col(P - 1);  // hard case: fill along the top eigenvector
  if (u.allFinite() && u.norm() > 0.0) consider(u.normalized());

  // Near-hard case: gamma along the top eigenspace is roundoff, so mu sits
  // within rounding of sigma_max and the secular vector is unreliable there.
  const double tie = 1e-12 * (1.0 + std::abs(sigma_max));
  VecP uh = VecP::Zero();
  for (int i = 0; i < P; ++i)
    if (sigma_max - sigma(i) > tie) uh += (gamma(i) / (sigma_max - sigma(i))) * q.col(i);
  if (uh.squaredNorm() <= 1.0) {
    const double t = std::sqrt(1.0 - uh.squaredNorm());
    consider(uh + t * q.col(P - 1));
    consider(uh - t * q.col(P - 1));
  }

  // Polish: u <- (H u + g) / |H u + g| never decreases a convex quadratic.
  VecP v = out.u;
  for (int it = 0; it < 50; ++it) {
    const VecP w = h * v + g;
    if (!(w.norm() > 0.0)) break;
    const VecP next = w.normalized();
    const double change = (next - v).norm();
    v = next;
    if (change < 1e-15) break;
  }
  consider(v);
  return out;
}

}  // namespace

SphereMax<2> maximize_on_circle(const Eigen::Matrix<double, 3, 2>& a, const Vec3& k) { return maximize<2>(a, k); }

SphereMax<3> maximize_on_sphere(const Mat3& a, const Vec3& k) { return maximize<3>(a, k); }

void plane_basis(const Vec3& n, Vec3& e1, Vec3& e2) {
  const Vec3 pick = std::abs(n.x()) < 0.6 ? Vec3::UnitX() : (std::abs(n.y()) < 0.6 ? Vec3::UnitY() : Vec3::UnitZ());
  e1 = n.cross(pick).normalized();
  e2 = n.cross(e1);
}

std::vector<Vec3> fibonacci_sphere(int count) {
  std::vector<Vec3> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

}  // namespace cohmem::geometry
