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

#include "emobow/lexicon.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "emobow/represent.hpp"

namespace emobow {

namespace {

constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "anger", "anticipation", "disgust", "fear",     "joy",
    "sadness", "surprise",   "trust",   "positive", "negative"};

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char ch) { return std::isspace(ch) != 0; });
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw Error("MalformedLine", "lexicon line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

std::string_view to_string(Category c) noexcept {
  return kCategoryNames[static_cast<std::size_t>(c)];
}

std::optional<Category> parse_category(std::string_view label) noexcept {
  for (Category c : kCategoryOrder) {
    if (to_string(c) == label) return c;
  }
  return std::nullopt;
}

bool is_emotion(Category c) noexcept { return c < Category::Positive; }
bool is_sentiment(Category c) noexcept { return !is_emotion(c); }

CategorySet CategorySet::emotions() noexcept {
  CategorySet s;
  for (Category c : kCategoryOrder)
    if (is_emotion(c)) s.insert(c);
  return s;
}

CategorySet CategorySet::sentiments() noexcept {
  return CategorySet{Category::Positive, Category::Negative};
}

std::size_t CategorySet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_));
}

bool bears_sentiment(CategorySet cs) noexcept {
  return !(cs & CategorySet::sentiments()).empty();
}

bool bears_emotion(CategorySet cs) noexcept { return !(cs & CategorySet::emotions()).empty(); }

void Lexicon::assign(std::string word, CategorySet cs) {
  if (cs.empty()) {
    entries_.erase(word);
  } else {
    entries_.insert_or_assign(std::move(word), cs);
  }
}

CategorySet Lexicon::categories(std::string_view token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? CategorySet{} : it->second;
}

Lexicon parse_lexicon(std::istream& in, const LexiconOptions& options) {
  struct Flags {
    CategorySet set;
    CategorySet seen;
  };
  std::unordered_map<std::string, Flags> words;
  std::vector<std::string> order;

  Lexicon lex;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim_cr(raw);
    if (is_blank(line)) continue;

    std::array<std::string_view, 3> fields;
    std::size_t n_fields = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (n_fields == fields.size()) malformed(line_no, "expected 3 tab-separated fields");
      fields[n_fields++] = line.substr(start, tab == std::string_view::npos ? tab : tab - start);
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (n_fields != 3) malformed(line_no, "expected 3 tab-separated fields");

    const std::string word = lowercase_ascii(fields[0]);
    if (word.empty() ||
        std::any_of(word.begin(), word.end(), [](unsigned char ch) { return std::isspace(ch); })) {
      malformed(line_no, "empty word or word containing whitespace");
    }
    if (word == kGenericToken) {
      throw Error("ReservedToken", "lexicon line " + std::to_string(line_no) +
                                       ": word collides with the generic token");
    }

    std::optional<Category> cat = parse_category(fields[1]);
    if (!cat) {
      auto alias = options.aliases.find(fields[1]);
      if (alias != options.aliases.end()) cat = alias->second;
    }
    if (!cat) {
      throw Error("UnknownCategory", "lexicon line " + std::to_string(line_no) +
                                         ": unknown category '" + std::string(fields[1]) + "'");
    }

    if (fields[2] != "0" && fields[2] != "1") malformed(line_no, "flag must be 0 or 1");

    auto [it, inserted] = words.try_emplace(word);
    if (inserted) order.push_back(word);
    Flags& f = it->second;
    if (f.seen.contains(*cat)) ++lex.duplicate_line_count_;
    f.seen.insert(*cat);
    if (fields[2] == "1") {
      f.set.insert(*cat);
    } else {
      f.set.erase(*cat);
    }
  }

  for (const std::string& w : order) {
    const CategorySet cs = words[w].set;
    if (!cs.empty()) lex.entries_.emplace(w, cs);
  }
  lex.source_line_count_ = line_no;
  return lex;
}

Lexicon load_lexicon(const std::string& path, const LexiconOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("Io", "cannot open lexicon '" + path + "'");
  return parse_lexicon(in, options);
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  for (const auto& [word, cs] : lexicon.entries()) {
    for (Category c : kCategoryOrder) {
      out << word << '\t' << to_string(c) << '\t' << (cs.contains(c) ? '1' : '0') << '\n';
    }
  }
}

}  // namespace emobow
