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

// Named qubit channels. Parameter conventions follow the usual Bloch-picture
// forms: phase_flip(p) has Lambda = diag(1-p, 1-p, 1); depolarizing(p) keeps
// a fraction p of the input, Lambda = p * 1.

#include <string>
#include <string_view>
#include <vector>

#include "cohmem/channel.hpp"

namespace cohmem::channels {

AffineChannel identity();
AffineChannel phase_flip(double p);
AffineChannel bit_flip(double p);
AffineChannel amplitude_damping(double p);
AffineChannel depolarizing(double p);
/// Lambda = diag(0, a, b), kappa = 0.
AffineChannel planar(double a, double b);
/// Measure-and-prepare channel with the largest Q-.
AffineChannel mp_minus();
/// Measure-and-prepare channel with the largest Q0 and Q+.
AffineChannel mp_plus();
/// Collapses onto the z axis: Lambda = diag(0, 0, 1).
AffineChannel z_projection();

KrausSet amplitude_damping_kraus(double p);
KrausSet depolarizing_kraus(double p);
KrausSet unitary_kraus(const CMatrix& u);

/// Parses "identity", "phase-flip:0.3", "planar:0.5:0.5", "mp-minus", ...
/// Throws ParseError on unknown names or malformed parameters.
AffineChannel builtin(std::string_view spec);
std::vector<std::string> builtin_names();

}  // namespace cohmem::channels
