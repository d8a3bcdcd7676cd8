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

#pragma once

// Shared fixtures: the Grisham review and its six-word mini-lexicon, plus
// random generators for property tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "emobow/lexicon.hpp"
#include "emobow/textnorm.hpp"

namespace emobow::testing {

inline constexpr const char* kGrishamText =
    "Interesting Grisham tale of a lawyer that takes millions of dollars from his firm after "
    "faking his own death. Grisham usually is able to hook his readers early and, in this case, "
    "doesn't play his hand to soon. The usually reliable Frank Mueller makes this story even an "
    "even better bet on Audiobook.";

inline Lexicon grisham_lexicon() {
  Lexicon lex;
  lex.assign("interesting", {Category::Positive});
  lex.assign("death", {Category::Anger, Category::Sadness, Category::Fear, Category::Negative});
  lex.assign("hook", {Category::Positive, Category::Joy});
  lex.assign("play", {Category::Positive});
  lex.assign("reliable", {Category::Trust, Category::Positive});
  lex.assign("better", {Category::Positive, Category::Joy});
  return lex;
}

inline TokenSeq split_words(const std::string& s) {
  TokenSeq out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Random document over a small vocabulary "t0".."t{vocab-1}".
inline TokenSeq random_doc(std::mt19937_64& rng, std::size_t vocab, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  TokenSeq doc;
  for (std::size_t i = 0, n = len(rng); i < n; ++i) doc.push_back("t" + std::to_string(word(rng)));
  return doc;
}

// Random lexicon covering roughly half of the same vocabulary.
inline Lexicon random_lexicon(std::mt19937_64& rng, std::size_t vocab) {
  Lexicon lex;
  std::uniform_int_distribution<unsigned> bits(0, (1u << kNumCategories) - 1);
  std::bernoulli_distribution include(0.5);
  for (std::size_t w = 0; w < vocab; ++w) {
    if (include(rng)) lex.assign("t" + std::to_string(w), CategorySet::from_bits(static_cast<std::uint16_t>(bits(rng))));
  }
  return lex;
}

}  // namespace emobow::testing
