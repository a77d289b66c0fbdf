// Copyright 2026 The sysynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "sysynth/digest.hpp"
#include "sysynth/rational.hpp"

using sysynth::Rat;

TEST_CASE("decimal parsing is exact") {
  CHECK(Rat::from_decimal("0.1") == Rat(1, 10));
  CHECK(Rat::from_decimal("-2.5") == Rat(-5, 2));
  CHECK(Rat::from_decimal("1.2e-3") == Rat(3, 2500));
  CHECK(Rat::from_decimal("42") == Rat(42));
  CHECK(Rat::from_decimal("+0.250") == Rat(1, 4));
  CHECK(Rat::from_decimal("2E2") == Rat(200));
  CHECK_THROWS(Rat::from_decimal("abc"));
  CHECK_THROWS(Rat::from_decimal(""));
  CHECK_THROWS(Rat::from_decimal("1.2.3"));
}

TEST_CASE("arithmetic stays exact where doubles drift") {
  Rat tenth = Rat::from_decimal("0.1");
  Rat sum;
  for (int i = 0; i < 10; ++i) sum += tenth;
  CHECK(sum == Rat(1));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(Rat(1, 2) / Rat(1, 8) == Rat(4));
  CHECK_THROWS(Rat(1) / Rat(0));
}

TEST_CASE("comparisons") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(0));
  CHECK(Rat(7, 7) == Rat(1));
  CHECK(Rat(5, 10) == Rat(1, 2));
  CHECK(Rat(3, 2) >= Rat(3, 2));
}

TEST_CASE("string forms") {
  CHECK(Rat(421, 4).to_string() == "105.25");
  CHECK(Rat(-5, 2).to_string() == "-2.5");
  CHECK(Rat(1, 3).to_string() == "1/3");
  CHECK(Rat(0).to_string() == "0");
  CHECK(Rat(1, 1000).to_string() == "0.001");
  CHECK(Rat::from_double(0.1) == Rat(1, 10));
  CHECK(Rat::from_double(-12.75) == Rat(-51, 4));
}

TEST_CASE("overflow is reported, not silent") {
  Rat big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("sha256 known answers") {
  CHECK(sysynth::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sysynth::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // Two-block message exercises the padding path.
  CHECK(sysynth::sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}
