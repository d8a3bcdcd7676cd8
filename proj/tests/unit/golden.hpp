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

// Expected outputs of every representation model on the Grisham review
// under the six-word mini-lexicon.

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "emobow/represent.hpp"
#include "fixtures.hpp"

namespace emobow::testing {

inline constexpr const char* kGoldenM =
    "interesting grisham tale of a lawyer that takes millions of dollars from his firm after faking "
    "his own death grisham usually is able to hook his readers early and in this case doesn't play "
    "his hand to soon the usually reliable frank mueller makes this story even an even better bet "
    "on audiobook";

// Every word of kGoldenM not in `keep` replaced by the generic token.
inline std::string generic_except(const char* keep_words) {
  const TokenSeq keep = split_words(keep_words);
  TokenSeq out;
  for (const auto& w : split_words(kGoldenM))
    out.push_back(std::find(keep.begin(), keep.end(), w) != keep.end() ? w : std::string(kGenericToken));
  return join(out);
}

inline std::array<std::pair<ModelKind, std::string>, kNumModelKinds> golden_outputs() {
  return {{
      {ModelKind::M, kGoldenM},
      {ModelKind::ES, "interesting death hook play reliable better"},
      {ModelKind::S, "interesting death hook play reliable better"},
      {ModelKind::E, "death hook reliable better"},
      {ModelKind::ES_G, generic_except("interesting death hook play reliable better")},
      {ModelKind::S_G, generic_except("interesting death hook play reliable better")},
      {ModelKind::E_G, generic_except("death hook reliable better")},
      {ModelKind::CES_M,
       "positive grisham tale of a lawyer that takes millions of dollars from his firm after faking "
       "his own anger sadness fear negative grisham usually is able to positive joy his readers early "
       "and in this case doesn't positive his hand to soon the usually trust positive frank mueller "
       "makes this story even an even positive joy bet on audiobook"},
      {ModelKind::CS_M,
       "positive grisham tale of a lawyer that takes millions of dollars from his firm after faking "
       "his own negative grisham usually is able to positive his readers early and in this case "
       "doesn't positive his hand to soon the usually positive frank mueller makes this story even "
       "an even positive bet on audiobook"},
      {ModelKind::CE_M,
       "interesting grisham tale of a lawyer that takes millions of dollars from his firm after "
       "faking his own anger sadness fear grisham usually is able to joy his readers early and in "
       "this case doesn't play his hand to soon the usually trust frank mueller makes this story "
       "even an even joy bet on audiobook"},
      {ModelKind::M_MINUS_ES,
       "grisham tale of a lawyer that takes millions of dollars from his firm after faking his own "
       "grisham usually is able to his readers early and in this case doesn't his hand to soon the "
       "usually frank mueller makes this story even an even bet on audiobook"},
  }};
}

// Sorts each maximal run of category names, so one word's categories
// compare as a multiset.
inline TokenSeq canonical_runs(TokenSeq t) {
  auto is_cat = [](const std::string& w) { return parse_category(w).has_value(); };
  for (auto it = t.begin(); it != t.end();) {
    if (!is_cat(*it)) {
      ++it;
      continue;
    }
    auto end = std::find_if_not(it, t.end(), is_cat);
    std::sort(it, end);
    it = end;
  }
  return t;
}

inline bool is_category_model(ModelKind k) {
  return k == ModelKind::CES_M || k == ModelKind::CS_M || k == ModelKind::CE_M;
}

// Golden comparison: exact, except category runs in the C-models.
inline bool matches_golden(ModelKind kind, const TokenSeq& got, const std::string& expected) {
  if (is_category_model(kind)) return canonical_runs(got) == canonical_runs(split_words(expected));
  return join(got) == expected;
}

}  // namespace emobow::testing
