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

#include "cohmem/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>

#include "cohmem/error.hpp"
#include "cohmem/optim.hpp"

namespace cohmem {
namespace {

constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
// Optimizer variables: a factor B of the Choi state (eta = B B^dagger, real
// and imaginary parts row-major), a direction v for the smallest singular
// value, and the three inputs u_i.
constexpr int kB = 16;
constexpr int kV = 2 * kB;
constexpr int kU = kV + 3;
constexpr int kVars = kU + 9;
constexpr int kEqualities = 4;
constexpr int kConstraints = kEqualities + 3 + 6;

int axis_index(char basis) {
  switch (basis) {
    case 'x': case 'X': return 0;
    case 'y': case 'Y': return 1;
    case 'z': case 'Z': return 2;
  }
  throw ValidationError(std::string("unknown basis '") + basis + "'");
}

// sigma_a^T (x) sigma_b, so that T_ab = Tr[(sigma_a^T (x) sigma_b) eta] gives
// T_00 = Tr eta, T_a0 = 0 for trace preservation, Lambda_ij = T_ji and
// kappa_i = T_0i.
const std::array<std::array<CMatrix, 4>, 4>& pauli_products() {
  static const auto table = [] {
    std::array<std::array<CMatrix, 4>, 4> t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t[a][b] = Eigen::kroneckerProduct(pauli(a).transpose(), pauli(b)).eval();
    return t;
  }();
  return table;
}

CMatrix factor_of(const optim::Vector& x) {
  CMatrix b(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) b(r, c) = Complex(x(4 * r + c), x(kB + 4 * r + c));
  return b;
}

using Coefficients = Eigen::Matrix4d;

Coefficients pauli_coefficients(const CMatrix& b) {
  const CMatrix eta = b * b.adjoint();
  const auto& p = pauli_products();
  Coefficients t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t(i, j) = (p[i][j] * eta).trace().real();
  return t;
}

AffineChannel channel_from(const Coefficients& t) {
  AffineChannel a;
  for (int i = 0; i < 3; ++i) {
    a.kappa(i) = t(0, i + 1);
    for (int j = 0; j < 3; ++j) a.lambda(i, j) = t(j + 1, i + 1);
  }
  return a;
}

// Adds sum_ab g_ab dT_ab/dx to `grad`. For Hermitian P, d Tr[P B B^dagger]
// = 2 Re Tr[(P B)^dagger dB], so the gradient is 2 P B split into parts.
void chain_coefficients(const CMatrix& b, const Coefficients& g, Eigen::Ref<optim::Vector> grad) {
  const auto& p = pauli_products();
  CMatrix acc = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (g(i, j) != 0.0) acc += g(i, j) * p[i][j];
  const CMatrix pb = 2.0 * acc * b;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      grad(4 * r + c) += pb(r, c).real();
      grad(kB + 4 * r + c) += pb(r, c).imag();
    }
}

// Objective |Lambda v|^2 / |v|^2 and the constraint vector: trace
// preservation (equalities), |u_i| <= 1, and the six coherence bounds.
// Gradients are filled in when `grad` and `jac` are non-null.
double evaluate(const optim::Vector& x, const CoherenceDataset& d, optim::Vector& c, optim::Vector* grad,
                Eigen::MatrixXd* jac) {
  const CMatrix b = factor_of(x);
  const Coefficients t = pauli_coefficients(b);
  const AffineChannel ch = channel_from(t);
  const Vec3 v = x.segment<3>(kV);
  const Vec3 y = ch.lambda * v;
  const double vn = v.squaredNorm();
  const double f = y.squaredNorm() / vn;

  c.resize(kConstraints);
  c(0) = t(0, 0) - 1.0;
  for (int a = 1; a < 4; ++a) c(a) = t(a, 0);
  for (int i = 0; i < 3; ++i) {
    const Vec3 u = x.segment<3>(kU + 3 * i);
    c(kEqualities + i) = 1.0 - u.squaredNorm();
    const Vec3 w = ch.apply(u);
    for (int s = 0; s < 2; ++s) {
      const int a = kPairs[i][s];
      c(kEqualities + 3 + 2 * i + s) = w.squaredNorm() - w(a) * w(a) - d.c(i, s) * d.c(i, s);
    }
  }
  if (grad == nullptr || jac == nullptr) return f;

  // Gradient with respect to (Lambda, kappa) mapped onto T.
  auto to_coefficients = [](const Mat3& dl, const Vec3& dk) {
    Coefficients g = Coefficients::Zero();
    for (int i = 0; i < 3; ++i) {
      g(0, i + 1) = dk(i);
      for (int j = 0; j < 3; ++j) g(j + 1, i + 1) = dl(i, j);
    }
    return g;
  };

  grad->setZero(kVars);
  chain_coefficients(b, to_coefficients(2.0 * y * v.transpose() / vn, Vec3::Zero()), *grad);
  grad->segment<3>(kV) = 2.0 * ch.lambda.transpose() * y / vn - 2.0 * f * v / vn;

  jac->setZero(kConstraints, kVars);
  for (int a = 0; a < 4; ++a) {
    Coefficients g = Coefficients::Zero();
    g(a, 0) = 1.0;
    optim::Vector row = optim::Vector::Zero(kVars);
    chain_coefficients(b, g, row);
    jac->row(a) = row.transpose();
  }
  for (int i = 0; i < 3; ++i) {
    const Vec3 u = x.segment<3>(kU + 3 * i);
    jac->block<1, 3>(kEqualities + i, kU + 3 * i) = -2.0 * u.transpose();
    const Vec3 w = ch.apply(u);
    for (int s = 0; s < 2; ++s) {
      Vec3 gw = 2.0 * w;
      gw(kPairs[i][s]) = 0.0;
      const int row_index = kEqualities + 3 + 2 * i + s;
      optim::Vector row = optim::Vector::Zero(kVars);
      chain_coefficients(b, to_coefficients(gw * u.transpose(), gw), row);
      row.segment<3>(kU + 3 * i) = ch.lambda.transpose() * gw;
      jac->row(row_index) = row.transpose();
    }
  }
  return f;
}

optim::Vector constraints(const optim::Vector& x, const CoherenceDataset& d) {
  optim::Vector c;
  evaluate(x, d, c, nullptr, nullptr);
  return c;
}

double objective(const optim::Vector& x, const CoherenceDataset& d) {
  optim::Vector c;
  return evaluate(x, d, c, nullptr, nullptr);
}

void derivatives(const optim::Vector& x, const CoherenceDataset& d, double& f, optim::Vector& grad,
                 optim::Vector& c, Eigen::MatrixXd& jac) {
  f = evaluate(x, d, c, &grad, &jac);
}

// The trace-preserving channel read off the Choi factor. Trace-preservation
// residuals of B drop out here, so the result is exactly trace preserving.
AffineChannel channel_of(const optim::Vector& x) { return channel_from(pauli_coefficients(factor_of(x))); }

void set_column(optim::Vector& x, int col, const CVector& v) {
  for (int r = 0; r < 4; ++r) {
    x(4 * r + col) = v(r).real();
    x(kB + 4 * r + col) = v(r).imag();
  }
}

// Rescales B by (S (x) 1) so the input marginal is exactly 1/2.
optim::Vector trace_preserving(const optim::Vector& x) {
  const CMatrix b = factor_of(x);
  const CMatrix eta = b * b.adjoint();
  CMatrix marginal = CMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) marginal(i, k) += eta(2 * i + j, 2 * k + j);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(marginal);
  if (!(es.eigenvalues().minCoeff() > 1e-6)) return x;
  const CMatrix s = es.eigenvectors() * (0.5 * es.eigenvalues().cwiseInverse()).cwiseSqrt().asDiagonal() *
                    es.eigenvectors().adjoint();
  const CMatrix fixed = Eigen::kroneckerProduct(s, CMatrix::Identity(2, 2)).eval() * b;
  optim::Vector out = x;
  for (int c = 0; c < 4; ++c) set_column(out, c, fixed.col(c));
  return out;
}

Vec3 input_of(const optim::Vector& x, int i) { return x.segment<3>(kU + 3 * i); }

optim::Vector start_point(int index, std::uint64_t seed) {
  optim::Vector x = optim::Vector::Zero(kVars);
  x(kV) = 1.0;
  if (index == 0) {
    // Identity channel; always compatible.
    CVector phi = CVector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    set_column(x, 0, phi);
    x.segment<3>(kU) = Vec3::UnitZ();
    x.segment<3>(kU + 3) = Vec3::UnitY();
    x.segment<3>(kU + 6) = Vec3::UnitX();
    return x;
  }
  if (index == 1) {
    // Constant channel onto the body diagonal.
    const double theta = std::acos(1.0 / std::sqrt(3.0));
    CVector psi(2);
    psi << std::cos(theta / 2), std::polar(std::sin(theta / 2), M_PI / 4);
    for (int i = 0; i < 2; ++i) {
      CVector col = CVector::Zero(4);
      col.segment(2 * i, 2) = psi / std::sqrt(2.0);
      set_column(x, i, col);
    }
    return x;
  }
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index));
  std::normal_distribution<double> normal;
  for (int i = 0; i < 2 * kB; ++i) x(i) = normal(rng);
  x.head(2 * kB) /= x.head(2 * kB).norm();
  for (int i = kV; i < kU; ++i) x(i) = normal(rng);
  for (int i = kU; i < kVars; ++i) x(i) = 0.5 * normal(rng);
  return x;
}

struct StartOutcome {
  bool feasible = false;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  optim::Vector x;
};

bool verified(const optim::Vector& x, const CoherenceDataset& d, const CertifyOptions& opts) {
  if (!x.allFinite()) return false;
  if (constraints(x, d).tail(kConstraints - kEqualities).minCoeff() < -opts.feasibility_tol) return false;
  const AffineChannel a = channel_of(x);
  return is_completely_positive(a, opts.cp_tol) &&
         descartes_conditions(canonicalize(a), PositivityMode::CP, opts.cp_tol).all_pass();
}

}  // namespace

CoherenceDataset::CoherenceDataset(const std::vector<CoherenceBound>& bounds) {
  if (bounds.size() != 6) throw ValidationError("dataset needs exactly six bounds");
  std::array<std::array<bool, 2>, 3> seen{};
  for (const auto& b : bounds) {
    if (b.state < 1 || b.state > 3) throw ValidationError("state id must be 1, 2 or 3");
    if (!(b.c >= 0.0 && b.c <= 1.0)) throw ValidationError("coherence bound must lie in [0, 1]");
    const int i = b.state - 1;
    const int a = axis_index(b.basis);
    int slot = -1;
    for (int s = 0; s < 2; ++s)
      if (kPairs[i][s] == a) slot = s;
    if (slot < 0) {
      throw ValidationError("state " + std::to_string(b.state) + " is not measured in basis " + b.basis);
    }
    if (seen[i][slot]) throw ValidationError("duplicate bound for state " + std::to_string(b.state));
    seen[i][slot] = true;
    c_[i][slot] = b.c;
  }
}

CoherenceDataset CoherenceDataset::uniform(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw ValidationError("coherence bound must lie in [0, 1]");
  CoherenceDataset d;
  for (auto& row : d.c_) row = {c, c};
  return d;
}

int CoherenceDataset::axis(int state, int slot) { return kPairs.at(state).at(slot); }

std::vector<CoherenceBound> CoherenceDataset::bounds() const {
  static constexpr char kNames[] = {'x', 'y', 'z'};
  std::vector<CoherenceBound> out;
  for (int i = 0; i < 3; ++i)
    for (int s = 0; s < 2; ++s) out.push_back({i + 1, kNames[kPairs[i][s]], c_[i][s]});
  return out;
}

CoherenceDataset dataset_from_channel(const AffineChannel& a, const std::array<Vec3, 3>& inputs) {
  std::vector<CoherenceBound> b;
  static constexpr char kNames[] = {'x', 'y', 'z'};
  for (int i = 0; i < 3; ++i) {
    if (inputs[i].norm() > 1.0 + 1e-12) throw ValidationError("input is not a Bloch vector");
    const Vec3 w = a.apply(inputs[i]);
    for (int s = 0; s < 2; ++s) {
      const int ax = kPairs[i][s];
      const double dist = std::sqrt(std::max(0.0, w.squaredNorm() - w(ax) * w(ax)));
      b.push_back({i + 1, kNames[ax], std::min(1.0, dist)});
    }
  }
  return CoherenceDataset(b);
}

void CertifyOptions::validate() const {
  if (starts < 2) throw ValidationError("certification needs at least two starts");
  if (threads < 0) throw ValidationError("thread count must be non-negative");
  if (!(feasibility_tol > 0.0) || !(cp_tol > 0.0) || !(agreement_tol > 0.0))
    throw ValidationError("tolerances must be positive");
}

CertifyResult certify_qminus(const CoherenceDataset& d, const CertifyOptions& opts) {
  opts.validate();
  const optim::ConstrainedProblem problem{
      [&d](const optim::Vector& x) { return objective(x, d); },
      [&d](const optim::Vector& x) { return constraints(x, d); },
      [&d](const optim::Vector& x, double& f, optim::Vector& g, optim::Vector& c, Eigen::MatrixXd& j) {
        derivatives(x, d, f, g, c, j);
      },
      kEqualities};
  optim::AugmentedLagrangianOptions al;
  al.feasibility_tol = 1e-8;

  std::vector<StartOutcome> outcomes(opts.starts);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < opts.starts; i = next++) {
      const optim::Vector x0 = start_point(i, opts.seed);
      const auto r = optim::augmented_lagrangian(problem, x0, al);
      StartOutcome& o = outcomes[i];
      for (const auto& [x, conv] : {std::pair{trace_preserving(r.x), r.converged}, std::pair{x0, false}}) {
        if (!verified(x, d, opts)) continue;
        const double v = canonicalize(channel_of(x)).sv(0);
        if (!o.feasible || v < o.value) o = {true, v, conv, x};
      }
    }
  };
  int n_threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, opts.starts);
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  CertifyResult res;
  const StartOutcome* best = nullptr;
  for (const auto& o : outcomes) {
    if (!o.feasible) continue;
    ++res.feasible_starts;
    if (best == nullptr || o.value < best->value) best = &o;
  }
  if (best == nullptr) return res;
  res.feasible = true;
  res.lower_bound = best->value;
  int agreeing = 0;
  for (const auto& o : outcomes)
    if (o.feasible && o.value <= best->value + opts.agreement_tol) ++agreeing;
  res.converged = best->converged || agreeing >= 2;
  res.certificate = channel_of(best->x);
  for (int i = 0; i < 3; ++i) {
    res.inputs[i] = input_of(best->x, i);
    res.outputs[i] = res.certificate.apply(res.inputs[i]);
  }
  return res;
}

std::vector<CurvePoint> sweep_certify(const std::vector<double>& c_grid, const CertifyOptions& opts) {
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    if (!(c_grid[i] >= 0.0 && c_grid[i] <= 1.0)) throw ValidationError("grid values must lie in [0, 1]");
    if (i > 0 && c_grid[i] < c_grid[i - 1]) throw ValidationError("grid must be sorted ascending");
  }
  std::vector<CurvePoint> curve;
  double running = 0.0;
  for (double c : c_grid) {
    const CertifyResult r = certify_qminus(CoherenceDataset::uniform(c), opts);
    if (!r.feasible) throw NumericError("no compatible channel found at c = " + std::to_string(c), c);
    running = std::max(running, r.lower_bound);
    curve.push_back({c, r.lower_bound, running, r.converged});
  }
  return curve;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "c,lower_bound,converged\n";
  char buf[96];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%d\n", p.c, p.lower_bound, p.converged ? 1 : 0);
    out += buf;
  }
  return out;
}

std::vector<double> linear_grid(double a, double b, int n) {
  if (n < 0) throw ValidationError("grid size must be non-negative");
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return g;
}

}  // namespace cohmem
