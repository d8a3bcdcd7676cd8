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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "emobow/textnorm.hpp"

namespace emobow {

// Tokens retained after document-frequency pruning, indexed densely in
// lexicographic order.
class Vocabulary {
 public:
  Vocabulary() = default;

  std::optional<std::uint32_t> index_of(const std::string& token) const;
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::vector<std::size_t>& doc_freqs() const noexcept { return doc_freq_; }
  std::size_t min_df() const noexcept { return min_df_; }

  // Two columns: token, document frequency.
  void write_tsv(std::ostream& out) const;

  bool operator==(const Vocabulary& o) const {
    return tokens_ == o.tokens_ && doc_freq_ == o.doc_freq_ && min_df_ == o.min_df_;
  }

  // Takes (token, df) pairs that already passed the threshold.
  static Vocabulary from_counts(std::vector<std::pair<std::string, std::size_t>> kept,
                                std::size_t min_df);

 private:
  std::vector<std::string> tokens_;
  std::vector<std::size_t> doc_freq_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t min_df_ = 1;
};

// Keeps the tokens occurring in at least `min_df` of the selected documents.
// A document listed twice in `subset` counts twice. Throws
// Error("EmptyVocabulary") when nothing survives; Error("InvalidArgument")
// when min_df is 0. Parallel over documents.
Vocabulary build_vocabulary(std::span<const TokenSeq> docs, std::span<const std::size_t> subset,
                            std::size_t min_df);
Vocabulary build_vocabulary(std::span<const TokenSeq> docs, std::size_t min_df);

namespace reference {
// Single-threaded, ordered-map implementation kept to cross-check the
// parallel reduction.
Vocabulary build_vocabulary_serial(std::span<const TokenSeq> docs,
                                   std::span<const std::size_t> subset, std::size_t min_df);
}  // namespace reference

struct FeatureCount {
  std::uint32_t feature = 0;
  std::uint32_t count = 0;
  bool operator==(const FeatureCount&) const = default;
};

// Sparse term-frequency vector; entries sorted by feature, counts >= 1.
struct CountVector {
  std::vector<FeatureCount> entries;
  std::size_t dimension = 0;

  std::uint32_t value(std::uint32_t feature) const noexcept;
  std::uint64_t total() const noexcept;
  bool operator==(const CountVector&) const = default;
};

// Out-of-vocabulary tokens are dropped.
CountVector vectorize(const TokenSeq& doc, const Vocabulary& vocab);

// Read-only view of one sparse row.
struct RowView {
  std::span<const FeatureCount> entries;
  std::uint32_t value(std::uint32_t feature) const noexcept;
};

// Compressed sparse rows over a fixed dimension.
class SparseMatrix {
 public:
  explicit SparseMatrix(std::size_t dimension = 0) : dimension_(dimension) { row_ptr_.push_back(0); }

  void push_back(const CountVector& row);
  std::size_t rows() const noexcept { return row_ptr_.size() - 1; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  RowView row(std::size_t i) const noexcept {
    return {std::span<const FeatureCount>(entries_).subspan(row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i])};
  }

 private:
  std::size_t dimension_;
  std::vector<std::size_t> row_ptr_;
  std::vector<FeatureCount> entries_;
};

// Vectorizes `docs[subset[i]]` into row i. Parallel over documents.
SparseMatrix vectorize_all(std::span<const TokenSeq> docs, std::span<const std::size_t> subset,
                           const Vocabulary& vocab);

}  // namespace emobow
