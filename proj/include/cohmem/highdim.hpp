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

// Lower bound on Q0 for a D-dimensional channel M given a unitary guess V:
// with K = M - V and lambda = D min_{a,s} <a s| eta_K |a s>,
//   Q0(M) >= (D (1 + lambda) - 1) / (D - 1).
// The product-state minimum is estimated by a see-saw: fix |a>, take the
// lowest eigenvector of <a|eta_K|a>; fix |s>, likewise; repeat.

#include <cstdint>
#include <vector>

#include "cohmem/channel.hpp"
#include "cohmem/coherence.hpp"

namespace cohmem {

struct SeesawOptions {
  int starts = 32;
  double tol = 1e-9;        // stop when successive estimates differ by less
  int max_iterations = 2000;
  std::uint64_t seed = 1;
};

struct SeesawRun {
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct HighDimEstimate {
  double lambda = 0.0;
  double q_zero_lb = 0.0;
  /// Set unless every restart landed within `tol` of the best value.
  bool heuristic = true;
  std::vector<SeesawRun> runs;
};

/// eta_M - |phi_V><phi_V| with |phi_V> = (1 (x) V)|phi+>.
CMatrix difference_choi(const ChoiMatrix& eta_m, const GeneralBasis& v);

HighDimEstimate qzero_lowerbound_highdim(const ChoiMatrix& eta_m, const GeneralBasis& v,
                                         const SeesawOptions& opts = {});

/// Unitary closest (in the polar sense) to the dominant Kraus direction of
/// the channel: a data-driven guess for V.
GeneralBasis best_unitary_fit(const ChoiMatrix& eta_m);

}  // namespace cohmem
