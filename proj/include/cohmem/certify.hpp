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

// Lower bounds on Q- from sparse coherence data.
//
// Three unknown input states are sent through an unknown qubit channel; the
// experiment certifies that output i has coherence at least c in two of the
// Pauli bases (state 1: x, y; state 2: x, z; state 3: y, z). Coherence in the
// basis labelled j is the distance of the Bloch vector from the j axis.
// Every completely positive channel compatible with such data has Q- at
// least its smallest singular value, so minimizing that value over the
// compatible channels gives a bound valid for the unknown channel.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cohmem/channel.hpp"

namespace cohmem {

struct CoherenceBound {
  int state = 1;       // 1, 2 or 3
  char basis = 'x';    // 'x', 'y' or 'z'
  double c = 0.0;
};

class CoherenceDataset {
 public:
  /// Exactly six bounds, one for each (state, basis) pair allowed above.
  explicit CoherenceDataset(const std::vector<CoherenceBound>& bounds);
  static CoherenceDataset uniform(double c);

  /// Axis index (0 = x, 1 = y, 2 = z) of slot s in {0, 1} for state i in {0, 1, 2}.
  static int axis(int state, int slot);
  /// Required coherence for state i, slot s.
  double c(int state, int slot) const { return c_[state][slot]; }
  std::vector<CoherenceBound> bounds() const;

 private:
  CoherenceDataset() = default;
  std::array<std::array<double, 2>, 3> c_{};
};

/// Dataset realised by `a` on the given inputs: each c is the exact output
/// coherence, so `a` is compatible with it.
CoherenceDataset dataset_from_channel(const AffineChannel& a, const std::array<Vec3, 3>& inputs);

struct CertifyOptions {
  int starts = 48;
  std::uint64_t seed = 11;
  int threads = 0;                 // 0: hardware concurrency
  double feasibility_tol = 1e-7;   // on the coherence and |u| <= 1 constraints
  double cp_tol = 1e-9;             // Choi eigenvalues and positivity conditions
  /// Runs within this of the best value count as reproducing it.
  double agreement_tol = 1e-5;
  void validate() const;
};

struct CertifyResult {
  bool feasible = false;
  double lower_bound = 0.0;
  /// The best run met its KKT test, or another start reproduced its value.
  bool converged = false;
  int feasible_starts = 0;
  AffineChannel certificate;
  std::array<Vec3, 3> inputs{};
  std::array<Vec3, 3> outputs{};
};

CertifyResult certify_qminus(const CoherenceDataset& d, const CertifyOptions& opts = {});

struct CurvePoint {
  double c = 0.0;
  double raw = 0.0;          // certify_qminus at this c
  double lower_bound = 0.0;  // running maximum of raw over the grid
  bool converged = false;
};

/// Grid must be sorted ascending with values in [0, 1].
std::vector<CurvePoint> sweep_certify(const std::vector<double>& c_grid, const CertifyOptions& opts = {});

/// "c,lower_bound,converged" with 12 significant digits and LF endings.
std::string curve_csv(const std::vector<CurvePoint>& curve);

/// n evenly spaced values from a to b inclusive; n = 1 gives {a}; n = 0 gives {}.
std::vector<double> linear_grid(double a, double b, int n);

}  // namespace cohmem
