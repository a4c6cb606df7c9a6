// Copyright 2026 The EpiKG Authors.
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

#include <stdexcept>

#include "epikg/core/dates.hpp"
#include "epikg/core/digest.hpp"
#include "epikg/core/text.hpp"

using namespace epikg;

TEST_CASE("dates parse and order") {
  const Date d = Date::parse("2150-03-02");
  CHECK(d.iso() == "2150-03-02");
  CHECK(Date::parse("2150-03-03").days_since_epoch() - d.days_since_epoch() == 1);
  CHECK_THROWS_AS(Date::parse("2150-13-01"), std::invalid_argument);
  CHECK_THROWS_AS(Date::parse("03/02/2150"), std::invalid_argument);
}

TEST_CASE("timestamps round-trip through iso") {
  const Timestamp t = Timestamp::parse("2026-01-01T00:00:00Z");
  CHECK(t.iso() == "2026-01-01T00:00:00Z");
  CHECK(Timestamp::parse("2026-01-01") == t);
  CHECK(t.date() == Date(2026, 1, 1));
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("word matching respects boundaries") {
  CHECK(text::contains_word("No pneumonia.", "no"));
  CHECK_FALSE(text::contains_word("Known pneumonia", "no"));
  CHECK(text::contains_word("history of CHF", "History Of"));
  CHECK(text::contains_substring("Known", "no"));
}

TEST_CASE("template substitution leaves unknown placeholders") {
  CHECK(text::substitute("{{a}} and {{b}}", {{"a", "x"}}) == "x and {{b}}");
}
