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

// JSON readers and writers for channels, datasets and unitaries.
//
// Channel:  {"repr": "affine", "dim": 2, "lambda": [[..],[..],[..]], "kappa": [..]}
//           {"repr": "kraus",  "dim": D, "kraus": [M, ...]}
//           {"repr": "choi",   "dim": D, "choi": M}
// Dataset:  {"c": 0.9}
//           {"bounds": [{"state": 1, "basis": "x", "c": 0.9}, ...]}
// Unitary:  {"dim": D, "unitary": M}
//
// Complex matrices M are row-major nested arrays whose entries are
// [re, im] pairs. Affine payloads are real.

#include <string>
#include <variant>

#include "cohmem/certify.hpp"
#include "cohmem/channel.hpp"
#include "cohmem/coherence.hpp"

namespace cohmem::io {

/// Kraus and Choi inputs are converted to a Choi state; affine inputs stay affine.
using ChannelData = std::variant<AffineChannel, ChoiMatrix>;

/// Parse errors carry "line L, column C" of the offending token; unreadable
/// files raise IoError.
ChannelData parse_channel(const std::string& text);
CoherenceDataset parse_dataset(const std::string& text);
GeneralBasis parse_unitary(const std::string& text);

ChannelData load_channel(const std::string& path);
CoherenceDataset load_dataset(const std::string& path);
GeneralBasis load_unitary(const std::string& path);

std::string channel_to_json(const AffineChannel& a);
std::string channel_to_json(const ChoiMatrix& c);

/// Qubit view of a channel; throws UnsupportedError for D > 2.
AffineChannel as_affine(const ChannelData& ch);
ChoiMatrix as_choi(const ChannelData& ch);

std::string read_file(const std::string& path);

}  // namespace cohmem::io
