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

#include <cmath>
#include <string>
#include <variant>

#include "support.hpp"

#include "cohmem/channel.hpp"
#include "cohmem/channels.hpp"
#include "cohmem/error.hpp"
#include "cohmem/io.hpp"
#include "cohmem/random.hpp"

using namespace cohmem;

namespace {

std::string message_of(const std::string& text) {
  try {
    io::parse_channel(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("affine channel round trip") {
  const AffineChannel a = channels::amplitude_damping(0.3);
  const auto back = io::parse_channel(io::channel_to_json(a));
  REQUIRE(std::holds_alternative<AffineChannel>(back));
  const AffineChannel b = std::get<AffineChannel>(back);
  CHECK((a.lambda - b.lambda).norm() < 1e-15);
  CHECK((a.kappa - b.kappa).norm() < 1e-15);
}

TEST_CASE("Choi round trip") {
  Rng rng(5);
  const ChoiMatrix c = choi_from_kraus(random_kraus(3, 2, rng));
  const auto back = io::parse_channel(io::channel_to_json(c));
  REQUIRE(std::holds_alternative<ChoiMatrix>(back));
  CHECK(test::close(std::get<ChoiMatrix>(back).matrix(), c.matrix(), 1e-15));
}

TEST_CASE("Kraus input becomes a Choi state") {
  const std::string text = R"({"repr": "kraus", "dim": 2, "kraus": [
      [[[1, 0], [0, 0]], [[0, 0], [0.8, 0]]],
      [[[0, 0], [0.6, 0]], [[0, 0], [0, 0]]]]})";
  const auto ch = io::parse_channel(text);
  REQUIRE(std::holds_alternative<ChoiMatrix>(ch));
  const AffineChannel a = io::as_affine(ch);
  const AffineChannel ad = channels::amplitude_damping(0.36);
  CHECK((a.lambda - ad.lambda).norm() < 1e-12);
  CHECK((a.kappa - ad.kappa).norm() < 1e-12);
}

TEST_CASE("malformed JSON reports its position") {
  const std::string msg = message_of("{\n  \"repr\": \"affine\",\n  \"dim\": 2,\n  oops\n}");
  CHECK(msg.find("line 4") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
  CHECK_THROWS_AS(io::parse_channel("[1, 2"), ParseError);
}

TEST_CASE("schema violations") {
  CHECK_THROWS_AS(io::parse_channel(R"({"repr": "affine", "dim": 2, "lambda": [[1,0,0],[0,1,0],[0,0,1]],
                                        "kappa": [0,0,0], "kraus": []})"),
                  ParseError);
  CHECK_THROWS_AS(io::parse_channel(R"({"repr": "affine", "dim": 3, "lambda": [[1,0,0],[0,1,0],[0,0,1]],
                                        "kappa": [0,0,0]})"),
                  ParseError);
  CHECK_THROWS_AS(io::parse_channel(R"({"repr": "choi", "dim": 5, "choi": []})"), ParseError);
  CHECK_THROWS_AS(io::parse_channel(R"({"repr": "stinespring", "dim": 2})"), ParseError);
  CHECK_THROWS_AS(io::parse_channel(R"({"repr": "affine", "dim": 2, "lambda": [[1,0],[0,1]], "kappa": [0,0,0]})"),
                  ParseError);
  CHECK_THROWS_AS(io::parse_channel(R"({"repr": "kraus", "dim": 2, "kraus": [[[1, 0], [0, 1]]]})"), ParseError);
  CHECK(message_of(R"({"repr": "affine", "dim": 2, "lambda": [[1,0,0],[0,1,0],[0,0,1]], "kappa": [0,0,0],
                       "extra": 1})")
            .find("extra") != std::string::npos);
}

TEST_CASE("non trace preserving Kraus operators are rejected") {
  const std::string text = R"({"repr": "kraus", "dim": 2, "kraus": [[[[1, 0], [0, 0]], [[0, 0], [0.5, 0]]]]})";
  CHECK_THROWS_AS(io::parse_channel(text), ValidationError);
}

TEST_CASE("datasets") {
  const auto u = io::parse_dataset(R"({"c": 0.9})");
  CHECK(u.c(2, 1) == doctest::Approx(0.9));
  const auto d = io::parse_dataset(R"({"bounds": [
      {"state": 1, "basis": "x", "c": 0.9}, {"state": 1, "basis": "y", "c": 0.8},
      {"state": 2, "basis": "x", "c": 0.7}, {"state": 2, "basis": "z", "c": 0.6},
      {"state": 3, "basis": "y", "c": 0.5}, {"state": 3, "basis": "z", "c": 0.4}]})");
  CHECK(d.c(0, 1) == doctest::Approx(0.8));
  CHECK(d.c(2, 1) == doctest::Approx(0.4));
  CHECK_THROWS_AS(io::parse_dataset(R"({"c": 1.5})"), ValidationError);
  CHECK_THROWS_AS(io::parse_dataset(R"({"c": 0.5, "bounds": []})"), ParseError);
  CHECK_THROWS_AS(io::parse_dataset(R"({"bounds": [{"state": 1, "basis": "w", "c": 0.5}]})"), ValidationError);
}

TEST_CASE("unitaries") {
  const auto u = io::parse_unitary(R"({"dim": 2, "unitary": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]})");
  CHECK(std::abs(u.unitary()(0, 1) - 1.0) < 1e-15);
  CHECK_THROWS_AS(io::parse_unitary(R"({"dim": 2, "unitary": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]})"),
                  ValidationError);
}

TEST_CASE("files") {
  CHECK_THROWS_AS(io::load_channel("/nonexistent/channel.json"), IoError);
  CHECK_THROWS_AS(io::read_file("/nonexistent/file"), IoError);
}

TEST_CASE("qubit view") {
  Rng rng(1);
  const ChoiMatrix c3 = choi_from_kraus(random_kraus(3, 1, rng));
  CHECK_THROWS_AS(io::as_affine(io::ChannelData{c3}), UnsupportedError);
  const AffineChannel a = channels::depolarizing(0.4);
  CHECK(test::close(io::as_choi(io::ChannelData{a}).matrix(), affine_to_choi(a).matrix(), 1e-15));
}
