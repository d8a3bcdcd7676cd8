/*
 * Copyright 2026 The emobow Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <random>

#include "emobow/textnorm.hpp"
#include "fixtures.hpp"

using namespace emobow;

TEST_CASE("the Grisham review normalizes to lowercase words") {
  const TokenSeq t = normalize(testing::kGrishamText);
  REQUIRE(t.size() >= 6);
  CHECK(TokenSeq(t.begin(), t.begin() + 6) == TokenSeq{"interesting", "grisham", "tale", "of", "a", "lawyer"});
  CHECK(t.back() == "audiobook");
  CHECK(t.size() == 53);
}

TEST_CASE("intra-word apostrophes survive") {
  CHECK(normalize("doesn't play") == TokenSeq{"doesn't", "play"});
  CHECK(normalize("doesn\xE2\x80\x99t") == TokenSeq{"doesn't"});
  CHECK(normalize("'quoted' rock'") == TokenSeq{"quoted", "rock"});
  CHECK(normalize("a''b") == TokenSeq{"a", "b"});
}

TEST_CASE("empty and punctuation-only text") {
  CHECK(normalize("").empty());
  CHECK(normalize(" ,.;!?-- ").empty());
}

TEST_CASE("digits are kept, other symbols separate") {
  CHECK(normalize("5-star READ!!") == TokenSeq{"5", "star", "read"});
  CHECK(normalize("caf\xC3\xA9 au lait") == TokenSeq{"caf", "au", "lait"});
  CHECK(normalize("tab\tnew\nline") == TokenSeq{"tab", "new", "line"});
}

TEST_CASE("property: idempotence and token alphabet") {
  std::mt19937_64 rng(5);
  const std::string alphabet = "aZ9' .,\t-!'\xE2\x80\x99\xC3\xA9x";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<std::size_t> len(0, 40);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) text.push_back(alphabet[pick(rng)]);
    const TokenSeq t = normalize(text);
    CHECK(normalize(join(t)) == t);
    for (const auto& tok : t) CHECK(is_normalized_token(tok));
  }
}

TEST_CASE("token predicate") {
  CHECK(is_normalized_token("doesn't"));
  CHECK(is_normalized_token("abc123"));
  CHECK_FALSE(is_normalized_token(""));
  CHECK_FALSE(is_normalized_token("Abc"));
  CHECK_FALSE(is_normalized_token("a b"));
  CHECK_FALSE(is_normalized_token("'a"));
  CHECK_FALSE(is_normalized_token("a'"));
  CHECK_FALSE(is_normalized_token("a''b"));
}
