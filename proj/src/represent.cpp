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

#include "emobow/represent.hpp"

namespace emobow {

namespace {

constexpr std::array<std::string_view, kNumModelKinds> kModelNames = {
    "m", "es", "s", "e", "es+g", "s+g", "e+g", "ces+m", "cs+m", "ce+m", "m-es"};

bool admits(Category c, ExpandMode mode) {
  switch (mode) {
    case ExpandMode::All:
      return true;
    case ExpandMode::SentimentsOnly:
      return is_sentiment(c);
    case ExpandMode::EmotionsOnly:
      return is_emotion(c);
  }
  return false;
}

void append_categories(TokenSeq& out, CategorySet cs, ExpandMode mode) {
  for (std::string_view name : expand_categories(cs, mode)) out.emplace_back(name);
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  return kModelNames[static_cast<std::size_t>(kind)];
}

std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept {
  for (ModelKind k : kAllModelKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<std::string_view> expand_categories(CategorySet cs, ExpandMode mode) {
  std::vector<std::string_view> out;
  for (Category c : kCategoryOrder) {
    if (cs.contains(c) && admits(c, mode)) out.push_back(to_string(c));
  }
  return out;
}

TokenSeq transform(const TokenSeq& doc, const Lexicon& lex, ModelKind kind) {
  if (kind == ModelKind::M) return doc;

  TokenSeq out;
  out.reserve(doc.size());
  for (const std::string& w : doc) {
    const CategorySet cs = lex.categories(w);
    const bool affect = !cs.empty();
    const bool sent = bears_sentiment(cs);
    const bool emo = bears_emotion(cs);
    switch (kind) {
      case ModelKind::M:
        out.push_back(w);
        break;
      case ModelKind::ES:
        if (affect) out.push_back(w);
        break;
      case ModelKind::S:
        if (sent) out.push_back(w);
        break;
      case ModelKind::E:
        if (emo) out.push_back(w);
        break;
      case ModelKind::ES_G:
        out.emplace_back(affect ? std::string_view(w) : kGenericToken);
        break;
      case ModelKind::S_G:
        out.emplace_back(sent ? std::string_view(w) : kGenericToken);
        break;
      case ModelKind::E_G:
        out.emplace_back(emo ? std::string_view(w) : kGenericToken);
        break;
      case ModelKind::CES_M:
        if (affect) {
          append_categories(out, cs, ExpandMode::All);
        } else {
          out.push_back(w);
        }
        break;
      case ModelKind::CS_M:
        if (sent) {
          append_categories(out, cs, ExpandMode::SentimentsOnly);
        } else {
          out.push_back(w);
        }
        break;
      case ModelKind::CE_M:
        if (emo) {
          append_categories(out, cs, ExpandMode::EmotionsOnly);
        } else {
          out.push_back(w);
        }
        break;
      case ModelKind::M_MINUS_ES:
        if (!affect) out.push_back(w);
        break;
    }
  }
  return out;
}

}  // namespace emobow
