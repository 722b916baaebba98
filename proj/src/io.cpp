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

#include "cohmem/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cohmem/error.hpp"

namespace cohmem::io {
namespace {

using nlohmann::json;

std::string location(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("malformed JSON at " + location(text, at));
  }
}

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ParseError("unexpected key '" + it.key() + "' in " + what);
}

const json& field(const json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw ParseError(what + " is missing '" + key + "'");
  return j.at(key);
}

double real(const json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + ": expected a real number");
  return j.get<double>();
}

Complex complex(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(what + ": complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix complex_matrix(const json& j, int rows, int cols, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw ParseError(what + ": expected " + std::to_string(cols) + " columns");
    for (int c = 0; c < cols; ++c) m(r, c) = complex(j[r][c], what);
  }
  return m;
}

int dimension(const json& j) {
  const json& d = field(j, "dim", "channel");
  if (!d.is_number_integer() || d.get<int>() < 2 || d.get<int>() > 4)
    throw ParseError("'dim' must be an integer between 2 and 4");
  return d.get<int>();
}

json complex_to_json(const CMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ChannelData parse_channel(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("channel must be a JSON object");
  const json& repr = field(j, "repr", "channel");
  if (!repr.is_string()) throw ParseError("'repr' must be a string");
  const std::string r = repr.get<std::string>();
  const int dim = dimension(j);

  if (r == "affine") {
    require_keys(j, {"repr", "dim", "lambda", "kappa"}, "affine channel");
    if (dim != 2) throw ParseError("affine channels must have dim 2");
    const json& l = field(j, "lambda", "affine channel");
    const json& k = field(j, "kappa", "affine channel");
    if (!l.is_array() || l.size() != 3) throw ParseError("'lambda' must be a 3x3 real matrix");
    if (!k.is_array() || k.size() != 3) throw ParseError("'kappa' must be a real 3-vector");
    AffineChannel a;
    for (int row = 0; row < 3; ++row) {
      if (!l[row].is_array() || l[row].size() != 3) throw ParseError("'lambda' must be a 3x3 real matrix");
      for (int c = 0; c < 3; ++c) a.lambda(row, c) = real(l[row][c], "lambda");
      a.kappa(row) = real(k[row], "kappa");
    }
    return a;
  }
  if (r == "kraus") {
    require_keys(j, {"repr", "dim", "kraus"}, "Kraus channel");
    const json& ks = field(j, "kraus", "Kraus channel");
    if (!ks.is_array() || ks.empty()) throw ParseError("'kraus' must be a non-empty list of matrices");
    std::vector<CMatrix> ops;
    for (const auto& k : ks) ops.push_back(complex_matrix(k, dim, dim, "kraus"));
    return choi_from_kraus(KrausSet(std::move(ops), 1e-8));
  }
  if (r == "choi") {
    require_keys(j, {"repr", "dim", "choi"}, "Choi channel");
    return ChoiMatrix(complex_matrix(field(j, "choi", "Choi channel"), dim * dim, dim * dim, "choi"));
  }
  throw ParseError("unknown repr '" + r + "' (expected affine, kraus or choi)");
}

CoherenceDataset parse_dataset(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("dataset must be a JSON object");
  if (j.contains("c")) {
    require_keys(j, {"c"}, "dataset");
    return CoherenceDataset::uniform(real(j.at("c"), "c"));
  }
  require_keys(j, {"bounds"}, "dataset");
  const json& b = field(j, "bounds", "dataset");
  if (!b.is_array()) throw ParseError("'bounds' must be a list");
  std::vector<CoherenceBound> bounds;
  for (const auto& e : b) {
    require_keys(e, {"state", "basis", "c"}, "bound");
    const json& s = field(e, "state", "bound");
    const json& basis = field(e, "basis", "bound");
    if (!s.is_number_integer()) throw ParseError("'state' must be an integer");
    if (!basis.is_string() || basis.get<std::string>().size() != 1)
      throw ParseError("'basis' must be one of \"x\", \"y\", \"z\"");
    bounds.push_back({s.get<int>(), basis.get<std::string>()[0], real(field(e, "c", "bound"), "c")});
  }
  return CoherenceDataset(bounds);
}

GeneralBasis parse_unitary(const std::string& text) {
  const json j = parse_json(text);
  require_keys(j, {"dim", "unitary"}, "unitary");
  const int dim = dimension(j);
  return GeneralBasis(complex_matrix(field(j, "unitary", "unitary"), dim, dim, "unitary"), 1e-8);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ChannelData load_channel(const std::string& path) { return parse_channel(read_file(path)); }
CoherenceDataset load_dataset(const std::string& path) { return parse_dataset(read_file(path)); }
GeneralBasis load_unitary(const std::string& path) { return parse_unitary(read_file(path)); }

std::string channel_to_json(const AffineChannel& a) {
  json l = json::array();
  for (int r = 0; r < 3; ++r) l.push_back({a.lambda(r, 0), a.lambda(r, 1), a.lambda(r, 2)});
  const json j = {{"repr", "affine"}, {"dim", 2}, {"lambda", l}, {"kappa", {a.kappa(0), a.kappa(1), a.kappa(2)}}};
  return j.dump();
}

std::string channel_to_json(const ChoiMatrix& c) {
  const json j = {{"repr", "choi"}, {"dim", c.dim()}, {"choi", complex_to_json(c.matrix())}};
  return j.dump();
}

AffineChannel as_affine(const ChannelData& ch) {
  if (const auto* a = std::get_if<AffineChannel>(&ch)) return *a;
  return affine_from_choi(std::get<ChoiMatrix>(ch));
}

ChoiMatrix as_choi(const ChannelData& ch) {
  if (const auto* c = std::get_if<ChoiMatrix>(&ch)) return *c;
  return affine_to_choi(std::get<AffineChannel>(ch));
}

}  // namespace cohmem::io
