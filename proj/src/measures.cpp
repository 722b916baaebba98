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

#include "cohmem/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cohmem/error.hpp"
#include "cohmem/geometry.hpp"
#include "cohmem/optim.hpp"

namespace cohmem {
namespace {

using geometry::chart;
using geometry::plane_basis;

std::vector<Vec3> hemisphere_seeds(int count) {
  std::vector<Vec3> out;
  for (const Vec3& p : geometry::fibonacci_sphere(2 * count))
    if (p.z() > 0.0) out.push_back(p);
  return out;
}

bool same_axis(const Vec3& a, const Vec3& b) { return std::abs(a.dot(b)) > 0.995; }

void require_cp(const AffineChannel& a) {
  if (!a.lambda.allFinite() || !a.kappa.allFinite()) throw ValidationError("channel has non-finite entries");
  if (!is_completely_positive(a, 1e-7)) throw ValidationError("channel is not completely positive");
}

// Directions worth seeding with: singular axes on the output side (or input
// side) and the displacement.
std::vector<Vec3> frame_axes(const AffineChannel& a, bool input_side) {
  const CanonicalChannel cc = canonicalize(a);
  std::vector<Vec3> axes;
  for (int i = 0; i < 3; ++i) axes.push_back(input_side ? Vec3(cc.right.row(i).transpose()) : Vec3(cc.left.col(i)));
  if (!input_side && a.kappa.norm() > 1e-12) axes.push_back(a.kappa.normalized());
  return axes;
}

struct Tangent {
  Vec3 base, t1, t2;
  explicit Tangent(const Vec3& b) : base(b) { plane_basis(b, t1, t2); }
  Vec3 at(double x, double y) const { return chart(base, t1, t2, x, y); }
};

optim::NelderMeadOptions local_options(const OptimizerOptions& o) {
  optim::NelderMeadOptions nm;
  nm.initial_step = 0.15;
  nm.ftol = o.local_tol;
  nm.xtol = 1e-7;
  nm.max_evaluations = o.refine_iterations;
  nm.restarts = 3;
  return nm;
}

// Shared driver for the single-axis measures (Q0, Q+). `forced` seeds are
// always refined, ahead of the best-scoring ones.
template <class Inner>
MeasureResult minimize_single_axis(const AffineChannel& a, const OptimizerOptions& opts, Inner inner,
                                   const std::vector<Vec3>& forced = {}) {
  opts.validate();
  require_cp(a);
  std::vector<Vec3> seeds = frame_axes(a, false);
  for (const Vec3& s : hemisphere_seeds(opts.n_starts)) seeds.push_back(s);

  MeasureResult res;
  std::vector<std::pair<double, Vec3>> scored;
  for (const Vec3& s : seeds) scored.emplace_back(inner(s), s);
  res.evaluations = static_cast<int>(scored.size());
  std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  double best = std::numeric_limits<double>::infinity();
  Vec3 best_axis = scored.front().second;
  bool best_converged = false;
  std::vector<Vec3> used;
  const auto nm = local_options(opts);
  std::vector<Vec3> order = forced;
  for (const auto& entry : scored) order.push_back(entry.second);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vec3& seed = order[i];
    if (i >= forced.size() && static_cast<int>(used.size()) >= opts.refine_candidates + static_cast<int>(forced.size()))
      break;
    if (std::any_of(used.begin(), used.end(), [&](const Vec3& u) { return same_axis(u, seed); })) continue;
    used.push_back(seed);
    const Tangent tg(seed);
    const auto local = optim::nelder_mead([&](const optim::Vector& x) { return inner(tg.at(x(0), x(1))); },
                                          optim::Vector::Zero(2), nm);
    res.evaluations += local.evaluations;
    if (local.f < best) {
      best = local.f;
      best_axis = tg.at(local.x(0), local.x(1));
      best_converged = local.converged;
    }
  }
  res.starts_used = static_cast<int>(used.size());
  res.value = best;
  res.arg_axes = {BasisAxis(best_axis)};
  res.converged = best_converged;
  return res;
}

}  // namespace

void OptimizerOptions::validate() const {
  if (n_starts < 8) throw ValidationError("n_starts must be at least 8");
  if (refine_candidates < 1) throw ValidationError("refine_candidates must be positive");
  if (!(local_tol > 0.0) || !(report_tol > 0.0)) throw ValidationError("tolerances must be positive");
  if (refine_iterations < 10) throw ValidationError("refine_iterations is too small");
}

CircleMax max_dist_circle(const AffineChannel& a, const BasisAxis& input_axis, const BasisAxis& coh_axis) {
  Vec3 e1, e2;
  plane_basis(input_axis.n(), e1, e2);
  const Mat3 p = geometry::orthogonal_projector(coh_axis.n());
  Eigen::Matrix<double, 3, 2> circle;
  circle.col(0) = e1;
  circle.col(1) = e2;
  const auto r = geometry::maximize_on_circle(p * a.lambda * circle, p * a.kappa);
  CircleMax out;
  out.value = std::sqrt(std::max(0.0, r.value_sq));
  out.theta = std::atan2(r.u(1), r.u(0));
  out.input = r.u(0) * e1 + r.u(1) * e2;
  out.output = a.apply(out.input);
  return out;
}

CircleMax max_dist_circle(const CanonicalChannel& cc, const BasisAxis& input_axis, const BasisAxis& coh_axis) {
  return max_dist_circle(cc.diagonal(), input_axis, coh_axis);
}

EllipsoidMax max_dist_ellipsoid(const AffineChannel& a, const BasisAxis& coh_axis) {
  const Mat3 p = geometry::orthogonal_projector(coh_axis.n());
  const auto r = geometry::maximize_on_sphere(p * a.lambda, p * a.kappa);
  EllipsoidMax out;
  out.value = std::sqrt(std::max(0.0, r.value_sq));
  out.input = r.u;
  out.output = a.apply(r.u);
  return out;
}

EllipsoidMax max_dist_ellipsoid(const CanonicalChannel& cc, const BasisAxis& coh_axis) {
  return max_dist_ellipsoid(cc.diagonal(), coh_axis);
}

MeasureResult q_plus(const AffineChannel& a, const OptimizerOptions& opts) {
  auto res = minimize_single_axis(a, opts, [&](const Vec3& n) { return max_dist_ellipsoid(a, BasisAxis(n)).value; });
  const auto inner = max_dist_ellipsoid(a, res.arg_axes.front());
  res.inner_point = inner.input;
  return res;
}

MeasureResult q_zero(const AffineChannel& a, const OptimizerOptions& opts) {
  // The circle lies on the sphere, so starting from the Q+ axis keeps Q0 <= Q+.
  const Vec3 plus_axis = q_plus(a, opts).arg_axes.front().n();
  // Same axis for the input circle and the coherence basis, in the original frame.
  auto res = minimize_single_axis(
      a, opts,
      [&](const Vec3& n) {
        const BasisAxis ax(n);
        return max_dist_circle(a, ax, ax).value;
      },
      {plus_axis});
  const auto inner = max_dist_circle(a, res.arg_axes.front(), res.arg_axes.front());
  res.inner_theta = inner.theta;
  res.inner_point = inner.input;
  return res;
}

MeasureResult q_minus(const AffineChannel& a, const OptimizerOptions& opts) {
  opts.validate();
  require_cp(a);
  std::vector<Vec3> inputs = frame_axes(a, true);
  std::vector<Vec3> cohs = frame_axes(a, false);
  const auto hemi = hemisphere_seeds(opts.n_starts);
  inputs.insert(inputs.end(), hemi.begin(), hemi.end());
  cohs.insert(cohs.end(), hemi.begin(), hemi.end());

  auto objective = [&](const Vec3& m, const Vec3& n) { return max_dist_circle(a, BasisAxis(m), BasisAxis(n)).value; };

  struct Seed {
    double value;
    Vec3 m, n;
  };
  // Tied axes are admissible here, so the Q0 optimum is refined first.
  const Vec3 zero_axis = q_zero(a, opts).arg_axes.front().n();
  std::vector<Seed> scored;
  scored.reserve(inputs.size() * cohs.size() + 1);
  for (const Vec3& m : inputs)
    for (const Vec3& n : cohs) scored.push_back({objective(m, n), m, n});
  MeasureResult res;
  res.evaluations = static_cast<int>(scored.size());
  std::stable_sort(scored.begin(), scored.end(), [](const Seed& x, const Seed& y) { return x.value < y.value; });
  scored.insert(scored.begin(), Seed{objective(zero_axis, zero_axis), zero_axis, zero_axis});

  double best = std::numeric_limits<double>::infinity();
  Vec3 best_m = scored.front().m, best_n = scored.front().n;
  bool best_converged = false;
  std::vector<const Seed*> used;
  const auto nm = local_options(opts);
  for (const Seed& s : scored) {
    if (static_cast<int>(used.size()) >= opts.refine_candidates + 1) break;
    if (std::any_of(used.begin(), used.end(),
                    [&](const Seed* u) { return same_axis(u->m, s.m) && same_axis(u->n, s.n); })) {
      continue;
    }
    used.push_back(&s);
    const Tangent tm(s.m), tn(s.n);
    const auto local = optim::nelder_mead(
        [&](const optim::Vector& x) { return objective(tm.at(x(0), x(1)), tn.at(x(2), x(3))); },
        optim::Vector::Zero(4), nm);
    res.evaluations += local.evaluations;
    if (local.f < best) {
      best = local.f;
      best_m = tm.at(local.x(0), local.x(1));
      best_n = tn.at(local.x(2), local.x(3));
      best_converged = local.converged;
    }
  }
  res.starts_used = static_cast<int>(used.size());
  res.value = best;
  res.arg_axes = {BasisAxis(best_m), BasisAxis(best_n)};
  res.converged = best_converged;
  const auto inner = max_dist_circle(a, res.arg_axes[0], res.arg_axes[1]);
  res.inner_theta = inner.theta;
  res.inner_point = inner.input;
  return res;
}

LemmaBounds upper_bounds_lemma(const CanonicalChannel& cc) {
  constexpr double tie = 1e-9;
  std::array<int, 3> perm{0, 1, 2};
  LemmaBounds out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  do {
    bool consistent = true;
    for (int i = 0; i < 3; ++i) consistent = consistent && std::abs(cc.sv(perm[i]) - cc.sv(i)) <= tie;
    if (!consistent) continue;
    const Vec3 k(cc.kappa(perm[0]), cc.kappa(perm[1]), cc.kappa(perm[2]));
    const double transverse = std::hypot(k(0), k(1));
    out.minus = std::min(out.minus, std::min(transverse + cc.sv(0), cc.sv(1)));
    out.plus = std::min(out.plus, std::min(transverse + cc.sv(1), cc.sv(2)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

LemmaBounds lower_bounds_lemma(const CanonicalChannel& cc) { return {cc.sv(0), cc.sv(1)}; }

VerdictReport mp_verdict(const MeasureResult& minus, const MeasureResult& zero, const MeasureResult& plus,
                         bool unital, double margin) {
  VerdictReport r;
  auto check = [&](double value, double threshold, const char* what) {
    if (value > threshold + margin) r.reasons.emplace_back(what);
  };
  check(minus.value, mp_threshold::kMinus, "Q- > 1/sqrt(5)");
  check(zero.value, mp_threshold::kPlus, "Q0 > 1/sqrt(2)");
  check(plus.value, mp_threshold::kPlus, "Q+ > 1/sqrt(2)");
  if (unital) {
    check(minus.value, mp_threshold::kUnitalMinus, "unital Q- > 1/3");
    check(zero.value, mp_threshold::kUnitalPlus, "unital Q0 > 1/2");
    check(plus.value, mp_threshold::kUnitalPlus, "unital Q+ > 1/2");
  }
  r.verdict = r.reasons.empty() ? Verdict::Inconclusive : Verdict::CertifiedNonMP;
  return r;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedNonMP: return "certified-non-mp";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace cohmem
