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

// Haar-distributed sampling used by tests, the certifier's restarts and the
// see-saw. All functions take the generator explicitly so results are
// reproducible from a seed.

#include <random>

#include "cohmem/channel.hpp"

namespace cohmem {

using Rng = std::mt19937_64;

CMatrix random_unitary(int dim, Rng& rng);
/// Unit vector, Haar distributed.
CVector random_pure_state(int dim, Rng& rng);
/// Hilbert-Schmidt distributed mixed state.
DensityMatrix random_density(int dim, Rng& rng);
/// Kraus operators from a Haar-random isometry C^D -> C^(D r).
KrausSet random_kraus(int dim, int rank, Rng& rng);
/// Random CPTP qubit channel with 1..4 Kraus operators.
AffineChannel random_qubit_channel(Rng& rng);
/// Random unital CPTP qubit channel (a random mixture of unitaries).
AffineChannel random_unital_qubit_channel(Rng& rng);
Mat3 random_rotation(Rng& rng);
Vec3 random_unit_vector(Rng& rng);

}  // namespace cohmem
