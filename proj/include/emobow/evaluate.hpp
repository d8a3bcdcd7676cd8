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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "emobow/balance.hpp"
#include "emobow/corpus.hpp"
#include "emobow/corpus_io.hpp"
#include "emobow/forest.hpp"
#include "emobow/lexicon.hpp"
#include "emobow/represent.hpp"

namespace emobow {

// Rows are gold classes, columns predicted classes.
class ConfusionMatrix {
 public:
  void add(PolarityClass gold, PolarityClass predicted, std::uint64_t n = 1) {
    cells_[index_of(gold)][index_of(predicted)] += n;
  }
  void merge(const ConfusionMatrix& o);

  std::uint64_t at(PolarityClass gold, PolarityClass predicted) const {
    return cells_[index_of(gold)][index_of(predicted)];
  }
  std::uint64_t row_sum(PolarityClass gold) const;
  std::uint64_t col_sum(PolarityClass predicted) const;
  std::uint64_t total() const;
  std::uint64_t trace() const;

  static ConfusionMatrix from_rows(const std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses>& rows);
  const auto& cells() const noexcept { return cells_; }
  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> cells_{};
};

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct Metrics {
  PRF micro;
  PRF macro;
  PRF weighted;
  std::array<PRF, kNumClasses> per_class{};
  double accuracy = 0.0;
};

// Throws Error("EmptyMatrix") when the matrix holds no document.
Metrics compute_metrics(const ConfusionMatrix& cm);

// Deals every index into one of k folds, class by class. Within a class,
// members are ordered by a seeded hash of their key, so the assignment
// does not depend on input order. Throws Error("FoldError") when a class
// has fewer than k members.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const PolarityClass> labels,
                                                       std::span<const std::uint64_t> keys,
                                                       std::size_t k, std::uint64_t seed);
std::vector<std::vector<std::size_t>> stratified_folds(const LabeledSet& ds, std::size_t k,
                                                       std::uint64_t seed);

std::uint64_t document_key(const TokenSeq& doc) noexcept;

enum class VocabScope : std::uint8_t { PerFold, Global };
std::string_view to_string(VocabScope s) noexcept;
std::optional<VocabScope> parse_vocab_scope(std::string_view s) noexcept;

struct ExperimentConfig {
  std::string corpus_path;   // informational when the corpus is passed in memory
  std::string lexicon_path;
  std::vector<ModelKind> models{kAllModelKinds.begin(), kAllModelKinds.end()};
  SamplingRegime regime = SamplingRegime::Oversample;
  ResampleScope resample_scope = ResampleScope::PerFold;
  VocabScope vocab_scope = VocabScope::PerFold;
  ForestParams forest;
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  std::size_t min_df = 2;
  bool record_timing = false;  // wall-clock seconds go into the CSV only when set

  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct ModelResult {
  ModelKind model = ModelKind::M;
  SamplingRegime regime = SamplingRegime::Natural;
  bool ok = true;
  std::string error_kind;
  std::string error_message;

  ConfusionMatrix confusion;
  Metrics metrics;
  std::vector<double> fold_micro_f1;
  std::vector<std::size_t> fold_vocab_sizes;
  std::size_t n_docs = 0;      // documents tested (each exactly once)
  ClassCounts test_counts{};   // gold classes over the tested documents
  bool degenerate_vocabulary = false;  // some fold kept at most one feature
  double seconds = 0.0;

  std::size_t vocab_size() const;      // mean over folds, rounded
  double fold_standard_error() const;  // of the per-fold micro F1
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t corpus_size = 0;
  ClassCounts corpus_counts{};
  std::vector<ModelResult> results;

  bool ok() const;
};

// transform -> resample -> per-fold vocabulary -> vectorize -> forest ->
// pooled confusion -> metrics, for every configured model. A model whose
// pipeline raises an Error is recorded as failed and the next one runs;
// FoldError is raised directly since it affects all models.
ExperimentReport run_experiment(const Corpus& corpus, const Lexicon& lexicon,
                                const ExperimentConfig& config);
// Loads config.corpus_path and config.lexicon_path (no lexicon when empty).
ExperimentReport run_experiment(const ExperimentConfig& config);

// CSV: model,sampling,micro_p,micro_r,micro_f1,macro_f1,weighted_f1,n_docs,vocab_size,seconds
void write_csv(std::ostream& out, const ExperimentReport& report);
nlohmann::json to_json(const ExperimentReport& report);

// Renders a CSV report as an aligned text table.
std::string render_table(std::istream& csv);

}  // namespace emobow
