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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "emobow/types.hpp"

namespace emobow {

// The ten affect labels of an NRC-style lexicon. Declaration order is the
// canonical category order: the eight emotions first, then the two
// sentiments.
enum class Category : std::uint8_t {
  Anger,
  Anticipation,
  Disgust,
  Fear,
  Joy,
  Sadness,
  Surprise,
  Trust,
  Positive,
  Negative,
};

inline constexpr std::size_t kNumCategories = 10;
inline constexpr std::array<Category, kNumCategories> kCategoryOrder = {
    Category::Anger,   Category::Anticipation, Category::Disgust, Category::Fear,
    Category::Joy,     Category::Sadness,      Category::Surprise, Category::Trust,
    Category::Positive, Category::Negative};

std::string_view to_string(Category c) noexcept;
std::optional<Category> parse_category(std::string_view label) noexcept;
bool is_emotion(Category c) noexcept;
bool is_sentiment(Category c) noexcept;

class CategorySet {
 public:
  constexpr CategorySet() = default;
  constexpr CategorySet(std::initializer_list<Category> cats) {
    for (Category c : cats) insert(c);
  }

  static constexpr CategorySet from_bits(std::uint16_t bits) {
    CategorySet s;
    s.bits_ = bits & kAllBits;
    return s;
  }
  static CategorySet emotions() noexcept;
  static CategorySet sentiments() noexcept;

  constexpr void insert(Category c) { bits_ |= bit(c); }
  constexpr void erase(Category c) { bits_ &= static_cast<std::uint16_t>(~bit(c)); }
  constexpr bool contains(Category c) const { return (bits_ & bit(c)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  std::size_t size() const noexcept;
  constexpr std::uint16_t bits() const { return bits_; }

  constexpr CategorySet operator&(CategorySet o) const { return from_bits(bits_ & o.bits_); }
  constexpr CategorySet operator|(CategorySet o) const { return from_bits(bits_ | o.bits_); }
  constexpr bool operator==(const CategorySet&) const = default;

 private:
  static constexpr std::uint16_t kAllBits = (1u << kNumCategories) - 1;
  static constexpr std::uint16_t bit(Category c) {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(c));
  }
  std::uint16_t bits_ = 0;
};

bool bears_sentiment(CategorySet cs) noexcept;
bool bears_emotion(CategorySet cs) noexcept;

struct LexiconOptions {
  // Extra label spellings accepted in the category column.
  std::map<std::string, Category, std::less<>> aliases;
};

// Word -> affect categories. Immutable once built; safe to share across
// threads for reading.
class Lexicon {
 public:
  using Map = std::map<std::string, CategorySet, std::less<>>;

  Lexicon() = default;

  // Empty sets are not stored; assigning one removes the word.
  void assign(std::string word, CategorySet cs);

  CategorySet categories(std::string_view token) const;
  bool contains(std::string_view token) const { return entries_.find(token) != entries_.end(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const Map& entries() const noexcept { return entries_; }

  std::size_t source_line_count() const noexcept { return source_line_count_; }
  std::size_t duplicate_line_count() const noexcept { return duplicate_line_count_; }

  bool operator==(const Lexicon& other) const { return entries_ == other.entries_; }

 private:
  friend Lexicon parse_lexicon(std::istream&, const LexiconOptions&);
  Map entries_;
  std::size_t source_line_count_ = 0;
  std::size_t duplicate_line_count_ = 0;
};

// Reads `word<TAB>category<TAB>flag` lines. Throws Error with kind
// "MalformedLine", "UnknownCategory" or "ReservedToken".
Lexicon parse_lexicon(std::istream& in, const LexiconOptions& options = {});
Lexicon load_lexicon(const std::string& path, const LexiconOptions& options = {});

// Writes all ten flags for every stored word, words in lexicographic order.
void write_lexicon(std::ostream& out, const Lexicon& lexicon);

}  // namespace emobow
