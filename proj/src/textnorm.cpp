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

#include "emobow/textnorm.hpp"

#include <algorithm>

namespace emobow {

namespace {

constexpr char kApostrophe = '\'';
constexpr char kSeparator = ' ';

bool is_alnum(char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9'); }

// Maps the UTF-8 input onto one classified byte per code point: a lowercase
// alphanumeric, an apostrophe or a separator.
std::string classify(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const auto lead = static_cast<unsigned char>(text[i]);
    if (lead < 0x80) {
      char ch = static_cast<char>(lead);
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
      if (is_alnum(ch) || ch == kApostrophe) {
        out.push_back(ch);
      } else {
        out.push_back(kSeparator);
      }
      ++i;
      continue;
    }
    std::size_t len = 1;
    if ((lead & 0xE0) == 0xC0) {
      len = 2;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4;
    }
    len = std::min(len, text.size() - i);
    // U+2019 RIGHT SINGLE QUOTATION MARK
    if (text.substr(i, len) == "\xE2\x80\x99") {
      out.push_back(kApostrophe);
    } else {
      out.push_back(kSeparator);
    }
    i += len;
  }
  return out;
}

}  // namespace

TokenSeq normalize(std::string_view text) {
  const std::string chars = classify(text);
  TokenSeq tokens;
  std::string current;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    char ch = chars[i];
    if (ch == kApostrophe) {
      const bool inner = i > 0 && i + 1 < chars.size() && is_alnum(chars[i - 1]) &&
                         is_alnum(chars[i + 1]);
      if (!inner) ch = kSeparator;
    }
    if (ch == kSeparator) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string join(const TokenSeq& tokens, char sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(sep);
    out += tokens[i];
  }
  return out;
}

bool is_normalized_token(std::string_view token) noexcept {
  if (token.empty()) return false;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (is_alnum(token[i])) continue;
    if (token[i] != kApostrophe || i == 0 || i + 1 == token.size()) return false;
    if (!is_alnum(token[i - 1]) || !is_alnum(token[i + 1])) return false;
  }
  return true;
}

}  // namespace emobow
