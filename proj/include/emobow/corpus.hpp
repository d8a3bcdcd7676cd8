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

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "emobow/textnorm.hpp"
#include "emobow/types.hpp"

namespace emobow {

struct RawReview {
  std::string content;
  int rating = 0;
  std::string source_id;  // "<source>#<ordinal of review element>"
};

// Element names looked up while streaming. Defaults follow the Amazon
// Social Book Search dump.
struct ReviewSchema {
  std::string review_element = "review";
  std::string content_element = "content";
  std::string rating_element = "rating";
};

struct ParseStats {
  std::size_t review_elements = 0;
  std::size_t emitted = 0;
  std::size_t skipped = 0;
};

using ReviewSink = std::function<void(RawReview&&)>;

// Streams review elements out of an XML document, one review resident at a
// time. Reviews without content or without a rating that is an integer in
// [1,5] are counted as skipped. Malformed XML throws Error("XmlSyntax")
// after the reviews preceding the error were delivered.
ParseStats parse_reviews(std::istream& in, const std::string& source_name, const ReviewSink& sink,
                         const ReviewSchema& schema = {});

// Accepts "4", " 4 ", "4.0"; rejects "4.5", "6", "".
std::optional<int> parse_rating(std::string_view text) noexcept;

// 1,2 -> Negative; 3 -> Neutral; 4,5 -> Positive. Throws Error("OutOfRange").
PolarityClass rating_to_class(int rating);

struct LabeledItem {
  std::shared_ptr<const TokenSeq> doc;
  PolarityClass label = PolarityClass::Neutral;
};

// Documents plus labels. Copies of items share document storage, so
// duplicated items cost one pointer each.
class LabeledSet {
 public:
  LabeledSet() = default;
  explicit LabeledSet(std::vector<LabeledItem> items);

  void push_back(LabeledItem item);
  void push_back(TokenSeq doc, PolarityClass label);

  const std::vector<LabeledItem>& items() const noexcept { return items_; }
  const LabeledItem& operator[](std::size_t i) const { return items_[i]; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const ClassCounts& class_counts() const noexcept { return counts_; }
  std::vector<PolarityClass> labels() const;

  // Items at the given positions, in the given order.
  LabeledSet select(const std::vector<std::size_t>& indices) const;

 private:
  std::vector<LabeledItem> items_;
  ClassCounts counts_{};
};

struct ClassShare {
  std::size_t count = 0;
  double proportion = 0.0;
};

std::array<ClassShare, kNumClasses> class_distribution(const ClassCounts& counts);
std::array<ClassShare, kNumClasses> class_distribution(const LabeledSet& ds);

ClassCounts count_classes(const std::vector<PolarityClass>& labels);

}  // namespace emobow
