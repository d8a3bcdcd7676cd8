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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "emobow/corpus.hpp"
#include "emobow/textnorm.hpp"
#include "emobow/types.hpp"

namespace emobow {

// One labelled review as cached on disk.
struct CorpusRecord {
  std::string text;
  int rating = 0;  // 0 when unknown
  PolarityClass label = PolarityClass::Neutral;
};

// Newline-delimited JSON, one object per line:
//   {"text": "...", "rating": 4, "class": "positive"}
void write_record(std::ostream& out, const CorpusRecord& record);

// In-memory corpus ready for the representation models: normalized tokens
// and labels, parallel arrays.
struct Corpus {
  std::vector<TokenSeq> docs;
  std::vector<PolarityClass> labels;  // Neutral placeholder where unlabeled
  std::vector<bool> labeled;

  std::size_t size() const noexcept { return docs.size(); }
  ClassCounts class_counts() const { return count_classes(labels); }
};

// Accepts records carrying either "text" (normalized on load) or "tokens"
// (taken as already normalized), and either "class" or a "rating" in [1,5].
// Throws Error("CorpusFormat") naming the offending line. With
// require_labels off, records without a label are kept and flagged.
Corpus read_corpus(std::istream& in, const std::string& source_name = "<stream>",
                   bool require_labels = true);
Corpus load_corpus(const std::string& path, bool require_labels = true);

}  // namespace emobow
