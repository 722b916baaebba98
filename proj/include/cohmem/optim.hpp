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

// Small dense optimizers. Problems here have at most ~20 variables, so
// everything is plain Eigen with finite-difference gradients.

#include <functional>

#include <Eigen/Dense>

namespace cohmem::optim {

using Vector = Eigen::VectorXd;
using Objective = std::function<double(const Vector&)>;

struct LocalResult {
  Vector x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  double initial_step = 0.2;
  double ftol = 1e-10;   // absolute spread of simplex values
  double xtol = 1e-9;    // simplex diameter
  int max_evaluations = 4000;
  /// Re-seeds the simplex around the best point after convergence; a cheap
  /// way out of the spurious stalls Nelder-Mead shows on kinked objectives.
  int restarts = 2;
};

LocalResult nelder_mead(const Objective& f, const Vector& x0, const NelderMeadOptions& opts = {});

struct BfgsOptions {
  double gradient_tol = 1e-9;
  double fd_step = 1e-7;
  int max_iterations = 500;
};

/// Returns f(x) and, when `grad` is non-null, stores the gradient there.
using ValueGradient = std::function<double(const Vector& x, Vector* grad)>;

/// Central-difference gradients.
LocalResult bfgs(const Objective& f, const Vector& x0, const BfgsOptions& opts = {});
LocalResult bfgs(const ValueGradient& fg, const Vector& x0, const BfgsOptions& opts = {});

/// min f(x) subject to c_i(x) = 0 for i < equalities and c_i(x) >= 0 otherwise.
struct ConstrainedProblem {
  Objective objective;
  std::function<Vector(const Vector&)> constraints;
  /// Optional exact derivatives: objective value and gradient, constraint
  /// values and Jacobian. Finite differences are used when empty.
  std::function<void(const Vector& x, double& f, Vector& grad, Vector& c, Eigen::MatrixXd& jac)> derivatives;
  int equalities = 0;
};

struct AugmentedLagrangianOptions {
  double feasibility_tol = 1e-9;
  double initial_penalty = 10.0;
  double penalty_growth = 10.0;
  double max_penalty = 1e10;
  int max_outer = 30;
  /// Converged once feasible and the Lagrangian gradient is below this.
  double stationarity_tol = 1e-6;
  BfgsOptions inner;
};

struct ConstrainedResult {
  Vector x;
  double f = 0.0;
  double max_violation = 0.0;
  int evaluations = 0;
  bool converged = false;
};

ConstrainedResult augmented_lagrangian(const ConstrainedProblem& p, const Vector& x0,
                                       const AugmentedLagrangianOptions& opts = {});

}  // namespace cohmem::optim
