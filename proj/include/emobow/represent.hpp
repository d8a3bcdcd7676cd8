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

#include <optional>
#include <string_view>
#include <vector>

#include "emobow/lexicon.hpp"
#include "emobow/textnorm.hpp"

namespace emobow {

// Placeholder substituted for non-affect words by the generic models.
inline constexpr std::string_view kGenericToken = "non_emotion";

// The eleven bag-of-words representations.
enum class ModelKind : std::uint8_t {
  M,           // every word
  ES,          // affect words only
  S,           // sentiment-bearing words only
  E,           // emotion-bearing words only
  ES_G,        // affect words, others -> generic token
  S_G,         // sentiment words, others -> generic token
  E_G,         // emotion words, others -> generic token
  CES_M,       // affect words -> their category names
  CS_M,        // sentiment words -> sentiment category names
  CE_M,        // emotion words -> emotion category names
  M_MINUS_ES,  // every word except affect words
};

inline constexpr std::size_t kNumModelKinds = 11;
inline constexpr std::array<ModelKind, kNumModelKinds> kAllModelKinds = {
    ModelKind::M,    ModelKind::ES,    ModelKind::S,    ModelKind::E,
    ModelKind::ES_G, ModelKind::S_G,   ModelKind::E_G,  ModelKind::CES_M,
    ModelKind::CS_M, ModelKind::CE_M,  ModelKind::M_MINUS_ES};

// CLI spelling: m, es, s, e, es+g, s+g, e+g, ces+m, cs+m, ce+m, m-es.
std::string_view to_string(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept;

enum class ExpandMode : std::uint8_t { All, SentimentsOnly, EmotionsOnly };

// Category names of `cs` admitted by `mode`, in canonical category order.
std::vector<std::string_view> expand_categories(CategorySet cs, ExpandMode mode);

TokenSeq transform(const TokenSeq& doc, const Lexicon& lex, ModelKind kind);

}  // namespace emobow
