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

#include "cohmem/channels.hpp"

#include <charconv>
#include <cmath>

#include "cohmem/error.hpp"

namespace cohmem::channels {
namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(name) + ": parameter must lie in [0, 1]");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(std::string_view text, std::string_view spec) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParseError("malformed channel parameter '" + std::string(text) + "' in '" + std::string(spec) + "'");
  }
  return v;
}

}  // namespace

AffineChannel identity() { return {}; }

AffineChannel phase_flip(double p) {
  check_probability(p, "phase-flip");
  return {Vec3(1 - p, 1 - p, 1).asDiagonal(), Vec3::Zero()};
}

AffineChannel bit_flip(double p) {
  check_probability(p, "bit-flip");
  return {Vec3(1, 1 - p, 1 - p).asDiagonal(), Vec3::Zero()};
}

AffineChannel amplitude_damping(double p) {
  check_probability(p, "amplitude-damping");
  const double s = std::sqrt(1 - p);
  return {Vec3(s, s, 1 - p).asDiagonal(), Vec3(0, 0, p)};
}

AffineChannel depolarizing(double p) {
  check_probability(p, "depolarizing");
  return {p * Mat3::Identity(), Vec3::Zero()};
}

AffineChannel planar(double a, double b) { return {Vec3(0, a, b).asDiagonal(), Vec3::Zero()}; }

AffineChannel mp_minus() {
  const double r = 1.0 / std::sqrt(5.0);
  return {Vec3(0, r, r).asDiagonal(), Vec3(r, 0, 0)};
}

AffineChannel mp_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Vec3(0, 0, r).asDiagonal(), Vec3(r, 0, 0)};
}

AffineChannel z_projection() { return {Vec3(0, 0, 1).asDiagonal(), Vec3::Zero()}; }

KrausSet amplitude_damping_kraus(double p) {
  check_probability(p, "amplitude-damping");
  CMatrix k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(1 - p);
  k1 << 0, std::sqrt(p), 0, 0;
  return KrausSet({k0, k1});
}

KrausSet depolarizing_kraus(double p) {
  check_probability(p, "depolarizing");
  // p rho + (1-p)/4 sum_i sigma_i rho sigma_i
  std::vector<CMatrix> ops;
  ops.push_back(std::sqrt((1 + 3 * p) / 4) * pauli(0));
  for (int i = 1; i <= 3; ++i) ops.push_back(std::sqrt((1 - p) / 4) * pauli(i));
  return KrausSet(std::move(ops));
}

KrausSet unitary_kraus(const CMatrix& u) { return KrausSet({u}); }

AffineChannel builtin(std::string_view spec) {
  const auto parts = split(spec, ':');
  const std::string_view name = parts.front();
  auto params = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw ParseError("builtin channel '" + std::string(name) + "' takes " + std::to_string(n) + " parameter(s)");
    }
    std::vector<double> v;
    for (std::size_t i = 1; i < parts.size(); ++i) v.push_back(parse_number(parts[i], spec));
    return v;
  };
  if (name == "identity") return (params(0), identity());
  if (name == "phase-flip") return phase_flip(params(1)[0]);
  if (name == "bit-flip") return bit_flip(params(1)[0]);
  if (name == "amplitude-damping") return amplitude_damping(params(1)[0]);
  if (name == "depolarizing") return depolarizing(params(1)[0]);
  if (name == "planar") {
    const auto v = params(2);
    return planar(v[0], v[1]);
  }
  if (name == "mp-minus") return (params(0), mp_minus());
  if (name == "mp-plus") return (params(0), mp_plus());
  throw ParseError("unknown builtin channel '" + std::string(spec) + "'");
}

std::vector<std::string> builtin_names() {
  return {"identity", "phase-flip:p", "bit-flip:p", "amplitude-damping:p", "depolarizing:p", "planar:a:b",
          "mp-minus", "mp-plus"};
}

}  // namespace cohmem::channels
