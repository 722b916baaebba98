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

#include "cohmem/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace cohmem::optim {
namespace {

LocalResult nelder_mead_once(const Objective& f, const Vector& x0, double step, const NelderMeadOptions& o,
                             int budget) {
  const int n = static_cast<int>(x0.size());
  std::vector<Vector> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1](i) += step;
  int evals = 0;
  auto eval = [&](const Vector& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (int i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<int> order(n + 1);
  bool converged = false;
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front(), worst = order.back(), second = order[n - 1];

    double diameter = 0.0;
    for (int i = 1; i <= n; ++i) diameter = std::max(diameter, (pts[order[i]] - pts[best]).lpNorm<Eigen::Infinity>());
    if (vals[worst] - vals[best] <= o.ftol && diameter <= o.xtol) {
      converged = true;
      break;
    }
    if (diameter < 1e-14) {
      converged = true;
      break;
    }

    Vector centroid = Vector::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= n;

    const Vector xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const Vector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe, vals[worst] = fe;
      } else {
        pts[worst] = xr, vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr, vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector xc = outside ? Vector(centroid + 0.5 * (xr - centroid)) : Vector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = xc, vals[worst] = fc;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  LocalResult r;
  r.x = pts[it - vals.begin()];
  r.f = *it;
  r.evaluations = evals;
  r.converged = converged;
  return r;
}

Vector gradient(const Objective& f, const Vector& x, double h, int& evals) {
  Vector g(x.size());
  Vector xp = x;
  for (int i = 0; i < x.size(); ++i) {
    const double hi = h * std::max(1.0, std::abs(x(i)));
    xp(i) = x(i) + hi;
    const double fp = f(xp);
    xp(i) = x(i) - hi;
    const double fm = f(xp);
    xp(i) = x(i);
    g(i) = (fp - fm) / (2.0 * hi);
  }
  evals += 2 * static_cast<int>(x.size());
  return g;
}

// Stationarity of f - mult . c, plus complementary slackness.
double kkt_residual(const ConstrainedProblem& p, const Vector& x, const Vector& mult, double h) {
  double r = 0.0;
  Vector c;
  if (p.derivatives) {
    double f = 0.0;
    Vector gf;
    Eigen::MatrixXd jac;
    p.derivatives(x, f, gf, c, jac);
    r = (gf - jac.transpose() * mult).lpNorm<Eigen::Infinity>();
  } else {
    const Objective lagrangian = [&](const Vector& z) { return p.objective(z) - mult.dot(p.constraints(z)); };
    int evals = 0;
    r = gradient(lagrangian, x, h, evals).lpNorm<Eigen::Infinity>();
    c = p.constraints(x);
  }
  for (int i = p.equalities; i < c.size(); ++i) r = std::max(r, std::abs(mult(i) * c(i)));
  return r;
}

}  // namespace

LocalResult nelder_mead(const Objective& f, const Vector& x0, const NelderMeadOptions& opts) {
  LocalResult best = nelder_mead_once(f, x0, opts.initial_step, opts, opts.max_evaluations);
  int total = best.evaluations;
  double step = opts.initial_step;
  for (int r = 0; r < opts.restarts && total < opts.max_evaluations; ++r) {
    step *= 0.25;
    LocalResult again = nelder_mead_once(f, best.x, step, opts, opts.max_evaluations - total);
    total += again.evaluations;
    const bool improved = again.f < best.f - opts.ftol;
    if (again.f <= best.f) {
      again.converged = again.converged && best.converged;
      best = again;
    }
    if (!improved) break;
  }
  best.evaluations = total;
  return best;
}

LocalResult bfgs(const ValueGradient& fg, const Vector& x0, const BfgsOptions& opts) {
  const int n = static_cast<int>(x0.size());
  LocalResult r;
  r.x = x0;
  Vector g(n);
  r.f = fg(x0, &g);
  int evals = 1;
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= opts.gradient_tol) {
      r.converged = true;
      break;
    }
    Vector p = -hinv * g;
    double slope = g.dot(p);
    if (slope >= 0.0) {  // lost descent: reset curvature
      hinv.setIdentity();
      p = -g;
      slope = -g.squaredNorm();
    }
    double alpha = 1.0;
    double fn = fg(r.x + alpha * p, nullptr);
    ++evals;
    while (!(fn <= r.f + 1e-4 * alpha * slope) && alpha > 1e-16) {
      alpha *= 0.5;
      fn = fg(r.x + alpha * p, nullptr);
      ++evals;
    }
    if (!(fn < r.f)) {
      r.converged = g.lpNorm<Eigen::Infinity>() <= std::sqrt(opts.gradient_tol);
      break;
    }
    const Vector s = alpha * p;
    r.x += s;
    const double df = r.f - fn;
    Vector gn(n);
    r.f = fg(r.x, &gn);
    ++evals;
    const Vector y = gn - g;
    g = gn;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    if (df < 1e-15 * (1.0 + std::abs(r.f)) && s.lpNorm<Eigen::Infinity>() < 1e-12) {
      r.converged = true;
      break;
    }
  }
  r.evaluations = evals;
  return r;
}

LocalResult bfgs(const Objective& f, const Vector& x0, const BfgsOptions& opts) {
  int extra = 0;
  LocalResult r = bfgs(
      [&](const Vector& x, Vector* g) {
        if (g != nullptr) *g = gradient(f, x, opts.fd_step, extra);
        return f(x);
      },
      x0, opts);
  r.evaluations += extra;
  return r;
}

ConstrainedResult augmented_lagrangian(const ConstrainedProblem& p, const Vector& x0,
                                       const AugmentedLagrangianOptions& opts) {
  const bool exact = static_cast<bool>(p.derivatives);
  Vector x = x0;
  Vector c = p.constraints(x);
  Vector mult = Vector::Zero(c.size());
  double penalty = opts.initial_penalty;
  ConstrainedResult out;
  const int neq = p.equalities;
  auto violation = [neq](const Vector& cv) {
    double v = 0.0;
    for (int i = 0; i < cv.size(); ++i) v = std::max(v, i < neq ? std::abs(cv(i)) : -cv(i));
    return v;
  };
  // Shifted multiplier; equalities are not clamped.
  auto shifted = [&](int i, double ci, double penalty, const Vector& mult) {
    const double t = mult(i) - penalty * ci;
    return i < neq ? t : std::max(0.0, t);
  };
  double last_violation = violation(c);

  for (int outer = 0; outer < opts.max_outer; ++outer) {
    // Powell-Hestenes-Rockafellar form for c(x) >= 0.
    auto merit_terms = [&](const Vector& cz) {
      double v = 0.0;
      for (int i = 0; i < cz.size(); ++i) {
        const double t = shifted(i, cz(i), penalty, mult);
        v += (t * t - mult(i) * mult(i)) / (2.0 * penalty);
      }
      return v;
    };
    LocalResult inner;
    if (exact) {
      const ValueGradient merit = [&](const Vector& z, Vector* g) {
        if (g == nullptr) return p.objective(z) + merit_terms(p.constraints(z));
        double f = 0.0;
        Vector gf, cz;
        Eigen::MatrixXd jac;
        p.derivatives(z, f, gf, cz, jac);
        Vector t(cz.size());
        for (int i = 0; i < cz.size(); ++i) t(i) = shifted(i, cz(i), penalty, mult);
        *g = gf - jac.transpose() * t;
        return f + merit_terms(cz);
      };
      inner = bfgs(merit, x, opts.inner);
    } else {
      const Objective merit = [&](const Vector& z) { return p.objective(z) + merit_terms(p.constraints(z)); };
      inner = bfgs(merit, x, opts.inner);
    }
    out.evaluations += inner.evaluations;
    x = inner.x;
    c = p.constraints(x);
    for (int i = 0; i < c.size(); ++i) mult(i) = shifted(i, c(i), penalty, mult);
    const double v = violation(c);
    if (v <= opts.feasibility_tol && kkt_residual(p, x, mult, opts.inner.fd_step * 10.0) <= opts.stationarity_tol) {
      out.converged = true;
      break;
    }
    if (v > 0.25 * last_violation) penalty = std::min(opts.max_penalty, penalty * opts.penalty_growth);
    last_violation = v;
  }
  out.x = x;
  out.f = p.objective(x);
  out.max_violation = violation(c);
  return out;
}

}  // namespace cohmem::optim
