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

// Bloch-ball geometry shared by the measures and the certifier.

#include <vector>

#include "cohmem/types.hpp"

namespace cohmem::geometry {

template <int P>
struct SphereMax {
  double value_sq = 0.0;  // max |A u + k|^2
  Eigen::Matrix<double, P, 1> u;
};

/// Global maximum of |A u + k|^2 over unit vectors u in R^P (P = 2 or 3).
/// Solved through the secular equation of the trust-region problem, including
/// the hard case where the linear term has no component along the top
/// eigenvector of A^T A.
SphereMax<2> maximize_on_circle(const Eigen::Matrix<double, 3, 2>& a, const Vec3& k);
SphereMax<3> maximize_on_sphere(const Mat3& a, const Vec3& k);

/// Projector onto the plane orthogonal to the unit vector n.
inline Mat3 orthogonal_projector(const Vec3& n) { return Mat3::Identity() - n * n.transpose(); }

/// Right-handed orthonormal pair spanning the plane orthogonal to unit n.
void plane_basis(const Vec3& n, Vec3& e1, Vec3& e2);

/// Distance of the point from the line through the origin along unit n.
inline double distance_from_axis(const Vec3& p, const Vec3& n) { return (p - p.dot(n) * n).norm(); }

/// Evenly spread points on the unit sphere (golden-angle spiral).
std::vector<Vec3> fibonacci_sphere(int count);

/// Unit vector from a base direction moved within its tangent plane.
inline Vec3 chart(const Vec3& base, const Vec3& t1, const Vec3& t2, double a, double b) {
  return (base + a * t1 + b * t2).normalized();
}

}  // namespace cohmem::geometry
