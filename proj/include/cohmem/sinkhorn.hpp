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

// Sinkhorn normal form of unitaries, U = Z1 X Z2 with diagonal unitaries
// Z1, Z2 and a unitary X whose rows and columns each sum to one, and the
// common maximally coherent state it yields: for every U there are phases
// alpha, beta with Z_beta^dagger U Z_alpha |+> = |+>.

#include "cohmem/coherence.hpp"

namespace cohmem {

struct SinkhornDecomposition {
  CMatrix z1;  // diagonal, z1(0,0) == 1
  CMatrix x;
  CMatrix z2;  // diagonal; carries the global phase of U
  double residual = 0.0;  // max |row or column sum of x - 1|
};

struct CommonMaxCoherent {
  PhaseVector alpha;
  PhaseVector beta;
  double residual = 0.0;  // || Z_beta^dagger U Z_alpha |+> - |+> ||
};

struct SinkhornOptions {
  double tol = 1e-12;
  int max_iterations = 20000;
  int max_restarts = 32;
  unsigned long long seed = 7;
};

/// Throws NumericError (with the best residual) when no restart reaches `tol`.
SinkhornDecomposition sinkhorn_decompose(const GeneralBasis& u, const SinkhornOptions& opts = {});
CommonMaxCoherent common_max_coherent(const GeneralBasis& u, const SinkhornOptions& opts = {});

}  // namespace cohmem
