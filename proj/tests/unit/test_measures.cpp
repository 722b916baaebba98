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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"

#include "cohmem/channel.hpp"
#include "cohmem/channels.hpp"
#include "cohmem/error.hpp"
#include "cohmem/geometry.hpp"
#include "cohmem/measures.hpp"
#include "cohmem/optim.hpp"
#include "cohmem/random.hpp"

using namespace cohmem;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt5 = 1.0 / std::sqrt(5.0);

// Brute-force oracle. Inner maxima by dense sampling, outer minima over a
// dense axis grid followed by a Nelder-Mead polish of the best grid points.
namespace oracle {

std::vector<Vec3> hemisphere(int n) {
  std::vector<Vec3> pts;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < 2 * n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / (2.0 * n);
    if (z <= 0.0) break;
    const double r = std::sqrt(1.0 - z * z);
    pts.emplace_back(r * std::cos(golden * i), r * std::sin(golden * i), z);
  }
  return pts;
}

void frame(const Vec3& n, Vec3& e1, Vec3& e2) {
  const Vec3 helper = std::abs(n.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  e1 = helper.cross(n).normalized();
  e2 = n.cross(e1);
}

double dist(const Vec3& p, const Vec3& n) { return (p - p.dot(n) * n).norm(); }

double circle_max(const AffineChannel& a, const Vec3& m, const Vec3& n, int samples) {
  Vec3 e1, e2;
  frame(m, e1, e2);
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    best = std::max(best, dist(a.apply(std::cos(t) * e1 + std::sin(t) * e2), n));
  }
  return best;
}

// Dense sampling, then fixed-point ascent u <- grad / |grad| from the best samples.
double sphere_max(const AffineChannel& a, const Vec3& n, const std::vector<Vec3>& pts) {
  const Mat3 p = Mat3::Identity() - n * n.transpose();
  const Mat3 m = a.lambda.transpose() * p * a.lambda;
  const Vec3 g = a.lambda.transpose() * p * a.kappa;
  auto value = [&](const Vec3& u) { return (p * a.apply(u)).norm(); };
  double best = 0.0;
  Vec3 arg = pts.front();
  for (const Vec3& u : pts)
    for (double s : {1.0, -1.0}) {
      const double v = value(s * u);
      if (v > best) best = v, arg = s * u;
    }
  for (int it = 0; it < 200; ++it) {
    const Vec3 w = m * arg + g;
    if (w.norm() == 0.0) break;
    arg = w.normalized();
  }
  return std::max(best, value(arg));
}

template <class F>
double polish(F f, std::vector<std::pair<double, optim::Vector>> seeds, int keep) {
  std::sort(seeds.begin(), seeds.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  double best = seeds.front().first;
  optim::NelderMeadOptions nm;
  nm.initial_step = 0.04;
  nm.max_evaluations = 1500;
  for (int i = 0; i < keep && i < static_cast<int>(seeds.size()); ++i)
    best = std::min(best, optim::nelder_mead(f, seeds[i].second, nm).f);
  return best;
}

double q_zero(const AffineChannel& a) {
  std::vector<std::pair<double, optim::Vector>> seeds;
  for (const Vec3& n : hemisphere(5000)) {
    optim::Vector v(3);
    v << n.x(), n.y(), n.z();
    seeds.emplace_back(circle_max(a, n, n, 360), v);
  }
  auto f = [&](const optim::Vector& v) {
    const Vec3 n = Vec3(v(0), v(1), v(2)).normalized();
    return circle_max(a, n, n, 1440);
  };
  return polish(f, seeds, 6);
}

double q_plus(const AffineChannel& a) {
  const auto inner = hemisphere(1500);
  std::vector<std::pair<double, optim::Vector>> seeds;
  for (const Vec3& n : hemisphere(3000)) {
    optim::Vector v(3);
    v << n.x(), n.y(), n.z();
    seeds.emplace_back(sphere_max(a, n, inner), v);
  }
  auto f = [&](const optim::Vector& v) { return sphere_max(a, Vec3(v(0), v(1), v(2)).normalized(), inner); };
  return polish(f, seeds, 6);
}

double q_minus(const AffineChannel& a) {
  const auto axes = hemisphere(400);
  std::vector<std::pair<double, optim::Vector>> seeds;
  for (const Vec3& m : axes)
    for (const Vec3& n : axes) {
      optim::Vector v(6);
      v << m.x(), m.y(), m.z(), n.x(), n.y(), n.z();
      seeds.emplace_back(circle_max(a, m, n, 120), v);
    }
  auto f = [&](const optim::Vector& v) {
    return circle_max(a, Vec3(v(0), v(1), v(2)).normalized(), Vec3(v(3), v(4), v(5)).normalized(), 1440);
  };
  return polish(f, seeds, 12);
}

}  // namespace oracle

}  // namespace

TEST_CASE("inner maxima on named channels") {
  const auto id = canonicalize(channels::identity());
  CHECK(max_dist_circle(channels::identity(), BasisAxis::z(), BasisAxis::z()).value == doctest::Approx(1.0));
  CHECK(max_dist_circle(id, BasisAxis::z(), BasisAxis::z()).value == doctest::Approx(1.0));

  const AffineChannel diag{Vec3(0.3, 0.6, 0.8).asDiagonal(), Vec3::Zero()};
  CHECK(max_dist_circle(diag, BasisAxis::z(), BasisAxis::z()).value == doctest::Approx(0.6));

  CHECK(max_dist_circle(channels::mp_minus(), BasisAxis::x(), BasisAxis::x()).value == doctest::Approx(kInvSqrt5));

  for (const BasisAxis& ax : {BasisAxis::x(), BasisAxis::y(), BasisAxis(Vec3(1, 2, 3))})
    CHECK(max_dist_ellipsoid(channels::identity(), ax).value == doctest::Approx(1.0));
  const AffineChannel unital{Vec3(0.2, 0.5, 0.7).asDiagonal(), Vec3::Zero()};
  CHECK(max_dist_ellipsoid(unital, BasisAxis::z()).value == doctest::Approx(0.5));
  CHECK(max_dist_ellipsoid(channels::mp_plus(), BasisAxis::x()).value == doctest::Approx(kInvSqrt2));
}

TEST_CASE("ellipsoid maximum dominates every circle maximum") {
  Rng rng(19);
  for (int t = 0; t < 200; ++t) {
    const AffineChannel a = random_qubit_channel(rng);
    const BasisAxis n(random_unit_vector(rng));
    const double whole = max_dist_ellipsoid(a, n).value;
    for (int k = 0; k < 5; ++k) CHECK(max_dist_circle(a, BasisAxis(random_unit_vector(rng)), n).value <= whole + 1e-12);
  }
}

TEST_CASE("exact inner maxima agree with dense sampling") {
  Rng rng(23);
  std::normal_distribution<double> g;
  for (int t = 0; t < 3000; ++t) {
    Eigen::Matrix<double, 3, 2> a;
    Vec3 k;
    for (int i = 0; i < 3; ++i) {
      k(i) = 0.3 * g(rng);
      for (int j = 0; j < 2; ++j) a(i, j) = g(rng);
    }
    if (t % 3 == 0) {
      // Linear term orthogonal to the top eigenvector up to rounding: the
      // nearly degenerate case of the secular equation.
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a.transpose() * a);
      const Eigen::Vector2d top = es.eigenvectors().col(1);
      const Eigen::Vector2d low = es.eigenvectors().col(0);
      const Eigen::Matrix<double, 3, 2> pinv = a * (a.transpose() * a).inverse();
      k = pinv * (0.2 * g(rng) * low + 1e-15 * g(rng) * top);
    }
    const auto r = geometry::maximize_on_circle(a, k);
    double dense = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double th = 2.0 * std::numbers::pi * i / 2000;
      dense = std::max(dense, (a * Eigen::Vector2d(std::cos(th), std::sin(th)) + k).squaredNorm());
    }
    CHECK(r.value_sq >= dense - 1e-12);
    CHECK(r.value_sq == doctest::Approx((a * r.u + k).squaredNorm()).epsilon(1e-12));
    CHECK(r.u.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("measures of the example channels") {
  for (double p : {0.1, 0.5, 0.9}) {
    const AffineChannel pf = channels::phase_flip(p);
    CHECK(q_minus(pf).value == doctest::Approx(1 - p).epsilon(1e-6));
    CHECK(q_zero(pf).value == doctest::Approx(1 - p).epsilon(1e-6));
    CHECK(q_plus(pf).value == doctest::Approx(1 - p).epsilon(1e-6));
    const AffineChannel ad = channels::amplitude_damping(p);
    CHECK(q_minus(ad).value == doctest::Approx(std::sqrt(1 - p)).epsilon(1e-6));
    CHECK(q_zero(ad).value == doctest::Approx(std::sqrt(1 - p)).epsilon(1e-6));
    CHECK(q_plus(ad).value == doctest::Approx(std::sqrt(1 - p)).epsilon(1e-6));
    const AffineChannel dep = channels::depolarizing(p);
    CHECK(q_minus(dep).value == doctest::Approx(p).epsilon(1e-6));
    CHECK(q_zero(dep).value == doctest::Approx(p).epsilon(1e-6));
    CHECK(q_plus(dep).value == doctest::Approx(p).epsilon(1e-6));
  }
}

TEST_CASE("extremal measure and prepare channels") {
  CHECK(q_minus(channels::mp_minus()).value == doctest::Approx(kInvSqrt5).epsilon(1e-6));
  CHECK(q_zero(channels::mp_plus()).value == doctest::Approx(kInvSqrt2).epsilon(1e-6));
  CHECK(q_plus(channels::mp_plus()).value == doctest::Approx(kInvSqrt2).epsilon(1e-6));
  CHECK(q_minus(channels::depolarizing(1.0 / 3.0)).value == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(q_zero(channels::planar(0.5, 0.5)).value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(q_plus(channels::planar(0.5, 0.5)).value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("composition counterexamples") {
  const AffineChannel n = channels::z_projection();
  CHECK(q_zero(n).value == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(q_zero(channels::mp_plus().after(n)).value == doctest::Approx(kInvSqrt2).epsilon(1e-6));
  CHECK(q_plus(channels::mp_plus().after(n)).value == doctest::Approx(kInvSqrt2).epsilon(1e-6));
  const AffineChannel planar = channels::planar(0.5, 0.5);
  CHECK(q_minus(planar).value == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(q_minus(channels::mp_minus().after(planar)).value == doctest::Approx(kInvSqrt5 / 2).epsilon(1e-6));
}

TEST_CASE("unitary channels have unit quality") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const AffineChannel u = AffineChannel::rotation(random_rotation(rng));
    CHECK(q_minus(u).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(q_zero(u).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(q_plus(u).value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("non completely positive input is rejected") {
  const AffineChannel t{Vec3(1, 1, -1).asDiagonal(), Vec3::Zero()};
  CHECK_THROWS_AS(q_minus(t), ValidationError);
  CHECK_THROWS_AS(q_zero(t), ValidationError);
  CHECK_THROWS_AS(q_plus(t), ValidationError);
  OptimizerOptions bad;
  bad.n_starts = 4;
  CHECK_THROWS_AS(q_plus(channels::identity(), bad), ValidationError);
}

TEST_CASE("lemma bounds bracket the measures") {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const AffineChannel a = random_qubit_channel(rng);
    const auto cc = canonicalize(a);
    const auto lo = lower_bounds_lemma(cc);
    const auto hi = upper_bounds_lemma(cc);
    const double qm = q_minus(a).value, qz = q_zero(a).value, qp = q_plus(a).value;
    CHECK(lo.minus <= qm + 1e-4);
    CHECK(qm <= hi.minus + 1e-4);
    CHECK(lo.plus <= qp + 1e-4);
    CHECK(qp <= hi.plus + 1e-4);
    CHECK(qm <= qz + 1e-12);
    CHECK(qz <= qp + 1e-12);
  }
}

TEST_CASE("lemma bounds on named channels") {
  const auto id = upper_bounds_lemma(canonicalize(channels::identity()));
  CHECK(id.minus == doctest::Approx(1.0));
  CHECK(id.plus == doctest::Approx(1.0));
  const auto unital = canonicalize({Vec3(0.2, 0.5, 0.7).asDiagonal(), Vec3::Zero()});
  // kappa = 0: min(l1, l2) and min(l2, l3), equal to the lower bounds.
  CHECK(upper_bounds_lemma(unital).minus == doctest::Approx(0.2));
  CHECK(upper_bounds_lemma(unital).plus == doctest::Approx(0.5));
  CHECK(upper_bounds_lemma(canonicalize(channels::mp_minus())).minus == doctest::Approx(kInvSqrt5));
  const double p = 0.4;
  CHECK(lower_bounds_lemma(canonicalize(channels::phase_flip(p))).minus == doctest::Approx(1 - p));
  CHECK(lower_bounds_lemma(canonicalize(channels::amplitude_damping(p))).minus == doctest::Approx(1 - p));
}

TEST_CASE("unital channels attain the lower lemma bounds") {
  Rng rng(47);
  for (int t = 0; t < 100; ++t) {
    const AffineChannel a = random_unital_qubit_channel(rng);
    const auto lo = lower_bounds_lemma(canonicalize(a));
    CHECK(std::abs(q_minus(a).value - lo.minus) < 1e-4);
    CHECK(std::abs(q_plus(a).value - lo.plus) < 1e-4);
  }
}

TEST_CASE("optimizer matches the brute force oracle") {
  Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const AffineChannel a = random_qubit_channel(rng);
    CHECK(std::abs(q_zero(a).value - oracle::q_zero(a)) < 5e-3);
    CHECK(std::abs(q_plus(a).value - oracle::q_plus(a)) < 5e-3);
    if (t < 5) CHECK(std::abs(q_minus(a).value - oracle::q_minus(a)) < 5e-3);
  }
}

TEST_CASE("rotation invariances") {
  Rng rng(59);
  for (int t = 0; t < 30; ++t) {
    const AffineChannel m = random_qubit_channel(rng);
    const AffineChannel v = AffineChannel::rotation(random_rotation(rng));
    const AffineChannel v_inv = AffineChannel::rotation(v.lambda.transpose());
    const double qm = q_minus(m).value, qz = q_zero(m).value, qp = q_plus(m).value;
    CHECK(std::abs(q_minus(v.after(m)).value - qm) < 1e-4);
    CHECK(std::abs(q_minus(m.after(v)).value - qm) < 1e-4);
    CHECK(std::abs(q_plus(v.after(m)).value - qp) < 1e-4);
    CHECK(std::abs(q_plus(m.after(v)).value - qp) < 1e-4);
    CHECK(std::abs(q_zero(v.after(m).after(v_inv)).value - qz) < 1e-4);
  }
}

TEST_CASE("preprocessing and unital composition") {
  Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    const AffineChannel m = random_qubit_channel(rng);
    const AffineChannel n = random_qubit_channel(rng);
    CHECK(q_plus(m.after(n)).value <= q_plus(m).value + 1e-4);
    const AffineChannel mu = random_unital_qubit_channel(rng);
    const AffineChannel nu = random_unital_qubit_channel(rng);
    CHECK(q_minus(mu.after(nu)).value <= q_minus(mu).value + 1e-4);
  }
}

TEST_CASE("verdicts") {
  auto verdict = [](const AffineChannel& a, bool unital) {
    return mp_verdict(q_minus(a), q_zero(a), q_plus(a), unital);
  };
  CHECK(verdict(channels::identity(), false).verdict == Verdict::CertifiedNonMP);
  CHECK(verdict(channels::depolarizing(0.4), true).verdict == Verdict::CertifiedNonMP);
  CHECK(verdict(channels::depolarizing(0.4), false).verdict == Verdict::Inconclusive);
  CHECK(verdict(channels::mp_plus(), false).verdict == Verdict::Inconclusive);
  CHECK(verdict(channels::mp_minus(), false).verdict == Verdict::Inconclusive);
  const auto dep = verdict(channels::depolarizing(0.5), true);
  CHECK(dep.verdict == Verdict::CertifiedNonMP);
  CHECK(dep.reasons == std::vector<std::string>{"Q- > 1/sqrt(5)", "unital Q- > 1/3"});
  CHECK(verdict(channels::amplitude_damping(0.19), false).verdict == Verdict::CertifiedNonMP);
  CHECK(std::string(to_string(Verdict::Inconclusive)) == "inconclusive");
}
