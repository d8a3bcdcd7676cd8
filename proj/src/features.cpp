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

#include "emobow/features.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "emobow/types.hpp"

namespace emobow {

namespace {

void check_min_df(std::size_t min_df) {
  if (min_df == 0) throw Error("InvalidArgument", "min_df must be >= 1");
}

Vocabulary finish(std::vector<std::pair<std::string, std::size_t>> kept, std::size_t min_df) {
  if (kept.empty()) throw Error("EmptyVocabulary", "no token reaches the document-frequency threshold");
  return Vocabulary::from_counts(std::move(kept), min_df);
}

}  // namespace

std::optional<std::uint32_t> Vocabulary::index_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::write_tsv(std::ostream& out) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i) out << tokens_[i] << '\t' << doc_freq_[i] << '\n';
}

Vocabulary Vocabulary::from_counts(std::vector<std::pair<std::string, std::size_t>> kept,
                                   std::size_t min_df) {
  std::sort(kept.begin(), kept.end());
  Vocabulary v;
  v.min_df_ = min_df;
  v.tokens_.reserve(kept.size());
  v.doc_freq_.reserve(kept.size());
  for (auto& [tok, df] : kept) {
    v.index_.emplace(tok, static_cast<std::uint32_t>(v.tokens_.size()));
    v.tokens_.push_back(std::move(tok));
    v.doc_freq_.push_back(df);
  }
  return v;
}

Vocabulary build_vocabulary(std::span<const TokenSeq> docs, std::span<const std::size_t> subset,
                            std::size_t min_df) {
  check_min_df(min_df);
  using Counts = std::unordered_map<std::string_view, std::size_t>;
  const int n_threads = omp_get_max_threads();
  std::vector<Counts> partial(static_cast<std::size_t>(n_threads));

#pragma omp parallel num_threads(n_threads)
  {
    Counts& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
    std::unordered_set<std::string_view> seen;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(subset.size()); ++i) {
      seen.clear();
      for (const std::string& tok : docs[subset[static_cast<std::size_t>(i)]]) {
        if (seen.insert(tok).second) ++local[tok];
      }
    }
  }

  Counts merged = std::move(partial.front());
  for (std::size_t t = 1; t < partial.size(); ++t) {
    for (const auto& [tok, n] : partial[t]) merged[tok] += n;
  }

  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [tok, df] : merged) {
    if (df >= min_df) kept.emplace_back(std::string(tok), df);
  }
  return finish(std::move(kept), min_df);
}

Vocabulary build_vocabulary(std::span<const TokenSeq> docs, std::size_t min_df) {
  std::vector<std::size_t> all(docs.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return build_vocabulary(docs, all, min_df);
}

namespace reference {

Vocabulary build_vocabulary_serial(std::span<const TokenSeq> docs,
                                   std::span<const std::size_t> subset, std::size_t min_df) {
  check_min_df(min_df);
  std::map<std::string, std::size_t> df;
  for (std::size_t i : subset) {
    TokenSeq unique = docs[i];
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const std::string& tok : unique) ++df[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [tok, n] : df) {
    if (n >= min_df) kept.emplace_back(tok, n);
  }
  return finish(std::move(kept), min_df);
}

}  // namespace reference

std::uint32_t CountVector::value(std::uint32_t feature) const noexcept {
  return RowView{entries}.value(feature);
}

std::uint64_t CountVector::total() const noexcept {
  std::uint64_t sum = 0;
  for (const FeatureCount& e : entries) sum += e.count;
  return sum;
}

CountVector vectorize(const TokenSeq& doc, const Vocabulary& vocab) {
  CountVector v;
  v.dimension = vocab.size();
  std::vector<std::uint32_t> ids;
  ids.reserve(doc.size());
  for (const std::string& tok : doc) {
    if (auto id = vocab.index_of(tok)) ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  for (std::uint32_t id : ids) {
    if (!v.entries.empty() && v.entries.back().feature == id) {
      ++v.entries.back().count;
    } else {
      v.entries.push_back({id, 1});
    }
  }
  return v;
}

std::uint32_t RowView::value(std::uint32_t feature) const noexcept {
  auto it = std::lower_bound(entries.begin(), entries.end(), feature,
                             [](const FeatureCount& e, std::uint32_t f) { return e.feature < f; });
  return (it != entries.end() && it->feature == feature) ? it->count : 0;
}

void SparseMatrix::push_back(const CountVector& row) {
  if (row.dimension != dimension_) {
    throw Error("DimensionMismatch", "row dimension " + std::to_string(row.dimension) +
                                         " != matrix dimension " + std::to_string(dimension_));
  }
  entries_.insert(entries_.end(), row.entries.begin(), row.entries.end());
  row_ptr_.push_back(entries_.size());
}

SparseMatrix vectorize_all(std::span<const TokenSeq> docs, std::span<const std::size_t> subset,
                           const Vocabulary& vocab) {
  std::vector<CountVector> rows(subset.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(subset.size()); ++i) {
    rows[static_cast<std::size_t>(i)] = vectorize(docs[subset[static_cast<std::size_t>(i)]], vocab);
  }
  SparseMatrix m(vocab.size());
  for (const CountVector& r : rows) m.push_back(r);
  return m;
}

}  // namespace emobow
