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

// Memory quality measures of single-qubit channels.
//
// In the Bloch picture the robustness of coherence in the basis with axis n
// is the distance from the line along n, and the maximally coherent states of
// that basis form the great circle orthogonal to n. The three measures are
// minimax problems over this geometry:
//
//   Q0 = min_n     max_{c on circle(n)} dist_n(Lambda c + kappa)
//   Q- = min_{m,n} max_{c on circle(m)} dist_n(Lambda c + kappa)
//   Q+ = min_n     max_{|v| = 1}        dist_n(Lambda v + kappa)
//
// The inner maxima are solved exactly (see geometry.hpp); the outer minimum
// over axes is a multi-start Nelder-Mead search seeded from a Fibonacci
// sphere, the channel's singular frames and the optimum of the next larger
// measure (Q+ for Q0, Q0 for Q-), which keeps Q- <= Q0 <= Q+ exact.

#include <string>
#include <vector>

#include "cohmem/channel.hpp"
#include "cohmem/coherence.hpp"

namespace cohmem {

struct OptimizerOptions {
  int n_starts = 64;              // Fibonacci seeds per axis, >= 8
  double local_tol = 1e-8;        // Nelder-Mead value spread
  int refine_iterations = 3000;   // evaluation cap per local refinement
  int refine_candidates = 6;      // best seeds handed to the local search
  double report_tol = 1e-4;

  void validate() const;
};

struct CircleMax {
  double value = 0.0;
  double theta = 0.0;   // angle in the (e1, e2) frame of plane_basis(input axis)
  Vec3 input = Vec3::Zero();
  Vec3 output = Vec3::Zero();
};

struct EllipsoidMax {
  double value = 0.0;
  Vec3 input = Vec3::Zero();
  Vec3 output = Vec3::Zero();
};

/// Largest distance from the coherence axis over the image of the great
/// circle orthogonal to `input_axis`.
CircleMax max_dist_circle(const AffineChannel& a, const BasisAxis& input_axis, const BasisAxis& coh_axis);
/// Same, with the axes read in the canonical (diagonal) frame of `cc`.
CircleMax max_dist_circle(const CanonicalChannel& cc, const BasisAxis& input_axis, const BasisAxis& coh_axis);

/// Largest distance from the coherence axis over the whole image ellipsoid.
EllipsoidMax max_dist_ellipsoid(const AffineChannel& a, const BasisAxis& coh_axis);
EllipsoidMax max_dist_ellipsoid(const CanonicalChannel& cc, const BasisAxis& coh_axis);

struct MeasureResult {
  double value = 0.0;
  /// Q0 and Q+: the coherence axis. Q-: input axis, then coherence axis.
  std::vector<BasisAxis> arg_axes;
  double inner_theta = 0.0;      // circle measures
  Vec3 inner_point = Vec3::Zero();  // maximizing input Bloch vector
  int starts_used = 0;
  int evaluations = 0;
  bool converged = false;
};

/// All three throw ValidationError when the channel is not completely positive.
MeasureResult q_plus(const AffineChannel& a, const OptimizerOptions& opts = {});
MeasureResult q_zero(const AffineChannel& a, const OptimizerOptions& opts = {});
MeasureResult q_minus(const AffineChannel& a, const OptimizerOptions& opts = {});

struct LemmaBounds {
  double minus = 0.0;
  double plus = 0.0;
};

/// min(sqrt(k1^2 + k2^2) + l1, l2) and min(sqrt(k1^2 + k2^2) + l2, l3),
/// minimized over the frame orderings allowed by ties among the l_i.
LemmaBounds upper_bounds_lemma(const CanonicalChannel& cc);
/// (l1, l2); exact for unital channels.
LemmaBounds lower_bounds_lemma(const CanonicalChannel& cc);

/// Largest values attainable by measure-and-prepare qubit channels.
namespace mp_threshold {
inline const double kMinus = 0.44721359549995793;      // 1/sqrt(5)
inline const double kPlus = 0.70710678118654752;       // 1/sqrt(2), also bounds Q0
inline const double kUnitalMinus = 1.0 / 3.0;
inline const double kUnitalPlus = 0.5;                 // also bounds Q0
}  // namespace mp_threshold

enum class Verdict { CertifiedNonMP, Inconclusive };

struct VerdictReport {
  Verdict verdict = Verdict::Inconclusive;
  /// Human-readable list of exceeded thresholds, e.g. "Q- > 1/sqrt(5)".
  std::vector<std::string> reasons;
};

/// Never returns "measure-and-prepare": the measures are not faithful.
/// A threshold counts as exceeded only when passed by more than `margin`.
VerdictReport mp_verdict(const MeasureResult& minus, const MeasureResult& zero, const MeasureResult& plus,
                         bool unital, double margin = 1e-4);

const char* to_string(Verdict v);

}  // namespace cohmem
