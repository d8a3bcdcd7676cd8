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

#include "emobow/corpus.hpp"

#include <expat.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <memory>

namespace emobow {

namespace {

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

// SAX state for one document. Only the currently open review is buffered.
class ReviewHandler {
 public:
  ReviewHandler(const std::string& source, const ReviewSink& sink, const ReviewSchema& schema,
                ParseStats& stats)
      : source_(source), sink_(sink), schema_(schema), stats_(stats) {}

  void start(const XML_Char* name) {
    ++depth_;
    if (review_depth_ == 0) {
      if (schema_.review_element == name) {
        review_depth_ = depth_;
        content_.clear();
        rating_text_.clear();
        has_content_ = false;
        has_rating_ = false;
      }
      return;
    }
    if (content_depth_ == 0 && schema_.content_element == name) {
      content_depth_ = depth_;
      has_content_ = true;
    } else if (rating_depth_ == 0 && content_depth_ == 0 && schema_.rating_element == name) {
      rating_depth_ = depth_;
      has_rating_ = true;
    }
  }

  void end() {
    if (depth_ == content_depth_) {
      content_depth_ = 0;
    } else if (depth_ == rating_depth_) {
      rating_depth_ = 0;
    } else if (depth_ == review_depth_) {
      review_depth_ = 0;
      finish_review();
    }
    --depth_;
  }

  void text(const XML_Char* s, int len) {
    if (content_depth_ != 0) {
      content_.append(s, static_cast<std::size_t>(len));
    } else if (rating_depth_ != 0) {
      rating_text_.append(s, static_cast<std::size_t>(len));
    }
  }

 private:
  void finish_review() {
    ++stats_.review_elements;
    const std::size_t ordinal = stats_.review_elements;
    std::optional<int> rating = has_rating_ ? parse_rating(rating_text_) : std::nullopt;
    const bool content_ok =
        has_content_ && content_.find_first_not_of(" \t\r\n") != std::string::npos;
    if (!content_ok || !rating) {
      ++stats_.skipped;
      return;
    }
    ++stats_.emitted;
    sink_(RawReview{std::move(content_), *rating, source_ + "#" + std::to_string(ordinal)});
    content_.clear();
  }

  const std::string& source_;
  const ReviewSink& sink_;
  const ReviewSchema& schema_;
  ParseStats& stats_;

  int depth_ = 0;
  int review_depth_ = 0;
  int content_depth_ = 0;
  int rating_depth_ = 0;
  bool has_content_ = false;
  bool has_rating_ = false;
  std::string content_;
  std::string rating_text_;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char**) {
  static_cast<ReviewHandler*>(user)->start(name);
}
void XMLCALL on_end(void* user, const XML_Char*) { static_cast<ReviewHandler*>(user)->end(); }
void XMLCALL on_text(void* user, const XML_Char* s, int len) {
  static_cast<ReviewHandler*>(user)->text(s, len);
}

}  // namespace

std::optional<int> parse_rating(std::string_view text) noexcept {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return std::nullopt;
  const auto last = text.find_last_not_of(" \t\r\n");
  text = text.substr(first, last - first + 1);

  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value) || value != std::floor(value)) return std::nullopt;
  if (value < 1.0 || value > 5.0) return std::nullopt;
  return static_cast<int>(value);
}

ParseStats parse_reviews(std::istream& in, const std::string& source_name, const ReviewSink& sink,
                         const ReviewSchema& schema) {
  ParseStats stats;
  ReviewHandler handler(source_name, sink, schema, stats);
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("Io", "cannot allocate XML parser");
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  constexpr std::size_t kChunk = 1 << 16;
  std::vector<char> buf(kChunk);
  bool done = false;
  while (!done) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = static_cast<int>(in.gcount());
    done = got == 0 || in.eof();
    if (XML_Parse(parser.get(), buf.data(), got, done ? XML_TRUE : XML_FALSE) == XML_STATUS_ERROR) {
      throw Error("XmlSyntax",
                  source_name + ":" + std::to_string(XML_GetCurrentLineNumber(parser.get())) + ":" +
                      std::to_string(XML_GetCurrentColumnNumber(parser.get())) + ": " +
                      XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
  }
  return stats;
}

PolarityClass rating_to_class(int rating) {
  switch (rating) {
    case 1:
    case 2:
      return PolarityClass::Negative;
    case 3:
      return PolarityClass::Neutral;
    case 4:
    case 5:
      return PolarityClass::Positive;
    default:
      throw Error("OutOfRange", "rating " + std::to_string(rating) + " outside [1,5]");
  }
}

LabeledSet::LabeledSet(std::vector<LabeledItem> items) : items_(std::move(items)) {
  for (const LabeledItem& it : items_) ++counts_[index_of(it.label)];
}

void LabeledSet::push_back(LabeledItem item) {
  ++counts_[index_of(item.label)];
  items_.push_back(std::move(item));
}

void LabeledSet::push_back(TokenSeq doc, PolarityClass label) {
  push_back(LabeledItem{std::make_shared<const TokenSeq>(std::move(doc)), label});
}

std::vector<PolarityClass> LabeledSet::labels() const {
  std::vector<PolarityClass> out;
  out.reserve(items_.size());
  for (const LabeledItem& it : items_) out.push_back(it.label);
  return out;
}

LabeledSet LabeledSet::select(const std::vector<std::size_t>& indices) const {
  std::vector<LabeledItem> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(items_.at(i));
  return LabeledSet(std::move(out));
}

std::array<ClassShare, kNumClasses> class_distribution(const ClassCounts& counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  std::array<ClassShare, kNumClasses> out{};
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    out[i].count = counts[i];
    out[i].proportion = total == 0 ? 0.0 : static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

std::array<ClassShare, kNumClasses> class_distribution(const LabeledSet& ds) {
  return class_distribution(ds.class_counts());
}

ClassCounts count_classes(const std::vector<PolarityClass>& labels) {
  ClassCounts counts{};
  for (PolarityClass c : labels) ++counts[index_of(c)];
  return counts;
}

}  // namespace emobow
