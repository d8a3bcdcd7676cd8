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

#include "emobow/evaluate.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace emobow {

namespace {

using nlohmann::json;

constexpr int kReportSchemaVersion = 1;

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<TokenSeq> transform_all(const Corpus& corpus, const Lexicon& lex, ModelKind kind) {
  std::vector<TokenSeq> out(corpus.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(corpus.size()); ++i) {
    out[static_cast<std::size_t>(i)] = transform(corpus.docs[static_cast<std::size_t>(i)], lex, kind);
  }
  return out;
}

std::vector<PolarityClass> labels_at(std::span<const PolarityClass> labels,
                                     std::span<const std::size_t> idx) {
  std::vector<PolarityClass> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(labels[i]);
  return out;
}

// Every retained token must occur in some training document.
void check_no_leakage(const Vocabulary& vocab, std::span<const TokenSeq> docs,
                      std::span<const std::size_t> train) {
  std::vector<bool> seen(vocab.size(), false);
  std::size_t n_seen = 0;
  for (std::size_t d : train) {
    for (const std::string& tok : docs[d]) {
      if (auto id = vocab.index_of(tok); id && !seen[*id]) {
        seen[*id] = true;
        ++n_seen;
      }
    }
  }
  if (n_seen != vocab.size()) {
    throw Error("InvariantViolation", "vocabulary holds tokens absent from the training folds");
  }
}

void check_micro_identity(const Metrics& m) {
  if (!(m.micro.precision == m.micro.recall && m.micro.recall == m.micro.f1)) {
    throw Error("InvariantViolation", "micro precision, recall and F1 differ");
  }
}

std::string format_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string rule_name(FeaturesPerSplit::Rule r) {
  switch (r) {
    case FeaturesPerSplit::Rule::Sqrt:
      return "sqrt";
    case FeaturesPerSplit::Rule::All:
      return "all";
    case FeaturesPerSplit::Rule::Fixed:
      return "fixed";
  }
  return "sqrt";
}

ModelResult evaluate_model(const Corpus& corpus, const Lexicon& lexicon,
                           const ExperimentConfig& config, ModelKind kind,
                           std::span<const std::size_t> items,
                           const std::vector<std::vector<std::size_t>>& folds) {
  ModelResult result;
  result.model = kind;
  result.regime = config.regime;
  const auto started = std::chrono::steady_clock::now();

  const std::vector<TokenSeq> docs = transform_all(corpus, lexicon, kind);
  std::span<const PolarityClass> labels = corpus.labels;

  std::optional<Vocabulary> global_vocab;
  if (config.vocab_scope == VocabScope::Global) {
    global_vocab = build_vocabulary(docs, items, config.min_df);
  }

  std::vector<std::size_t> all_docs(corpus.size());
  std::iota(all_docs.begin(), all_docs.end(), std::size_t{0});

  for (std::size_t f = 0; f < folds.size(); ++f) {
    // Positions into `items` -> document indices.
    std::vector<std::size_t> test;
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      auto& dst = g == f ? test : train;
      for (std::size_t pos : folds[g]) dst.push_back(items[pos]);
    }
    std::sort(train.begin(), train.end());
    if (config.resample_scope == ResampleScope::PerFold) {
      const auto train_labels = labels_at(labels, train);
      const auto picked =
          resample_indices(train_labels, config.regime, derive_seed(config.seed, "resample", f));
      std::vector<std::size_t> resampled;
      resampled.reserve(picked.size());
      for (std::size_t p : picked) resampled.push_back(train[p]);
      train = std::move(resampled);
    }

    Vocabulary vocab;
    if (global_vocab) {
      vocab = *global_vocab;
    } else {
      vocab = build_vocabulary(docs, train, config.min_df);
      check_no_leakage(vocab, docs, train);
    }
    result.fold_vocab_sizes.push_back(vocab.size());
    if (vocab.size() <= 1) result.degenerate_vocabulary = true;

    const SparseMatrix X = vectorize_all(docs, all_docs, vocab);
    std::vector<std::uint32_t> sample(train.begin(), train.end());
    ForestParams params = config.forest;
    params.seed = derive_seed(config.seed, "forest", f);
    const Forest forest = train_forest(X, labels, sample, params);

    ConfusionMatrix fold_cm;
    std::vector<PolarityClass> predicted(test.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(test.size()); ++i) {
      predicted[static_cast<std::size_t>(i)] = forest.predict(X.row(test[static_cast<std::size_t>(i)]));
    }
    for (std::size_t i = 0; i < test.size(); ++i) {
      fold_cm.add(labels[test[i]], predicted[i]);
      ++result.test_counts[index_of(labels[test[i]])];
    }
    result.fold_micro_f1.push_back(compute_metrics(fold_cm).micro.f1);
    result.confusion.merge(fold_cm);
  }

  result.n_docs = result.confusion.total();
  result.metrics = compute_metrics(result.confusion);
  check_micro_identity(result.metrics);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

json prf_json(const PRF& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

json counts_json(const ClassCounts& c) {
  json j;
  for (PolarityClass k : kAllClasses) j[std::string(to_string(k))] = c[index_of(k)];
  return j;
}

}  // namespace

void ConfusionMatrix::merge(const ConfusionMatrix& o) {
  for (std::size_t g = 0; g < kNumClasses; ++g)
    for (std::size_t p = 0; p < kNumClasses; ++p) cells_[g][p] += o.cells_[g][p];
}

std::uint64_t ConfusionMatrix::row_sum(PolarityClass gold) const {
  const auto& r = cells_[index_of(gold)];
  return r[0] + r[1] + r[2];
}

std::uint64_t ConfusionMatrix::col_sum(PolarityClass predicted) const {
  const std::size_t p = index_of(predicted);
  return cells_[0][p] + cells_[1][p] + cells_[2][p];
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& r : cells_)
    for (std::uint64_t v : r) t += v;
  return t;
}

std::uint64_t ConfusionMatrix::trace() const { return cells_[0][0] + cells_[1][1] + cells_[2][2]; }

ConfusionMatrix ConfusionMatrix::from_rows(
    const std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses>& rows) {
  ConfusionMatrix cm;
  cm.cells_ = rows;
  return cm;
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw Error("EmptyMatrix", "confusion matrix holds no document");

  Metrics m;
  const std::uint64_t tp = cm.trace();
  // Pooled over classes every misclassification is one FP and one FN, so
  // the three micro figures reduce to the same integer ratio.
  const std::uint64_t fp = total - tp;
  const std::uint64_t fn = total - tp;
  m.micro.precision = ratio(tp, tp + fp);
  m.micro.recall = ratio(tp, tp + fn);
  m.micro.f1 = ratio(2 * tp, 2 * tp + fp + fn);
  m.accuracy = ratio(tp, total);

  for (PolarityClass c : kAllClasses) {
    PRF& p = m.per_class[index_of(c)];
    p.precision = ratio(cm.at(c, c), cm.col_sum(c));
    p.recall = ratio(cm.at(c, c), cm.row_sum(c));
    p.f1 = harmonic(p.precision, p.recall);

    const double support = static_cast<double>(cm.row_sum(c)) / static_cast<double>(total);
    m.macro.precision += p.precision / kNumClasses;
    m.macro.recall += p.recall / kNumClasses;
    m.macro.f1 += p.f1 / kNumClasses;
    m.weighted.precision += support * p.precision;
    m.weighted.recall += support * p.recall;
    m.weighted.f1 += support * p.f1;
  }
  return m;
}

std::uint64_t document_key(const TokenSeq& doc) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& tok : doc) {
    for (unsigned char ch : tok) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // token boundary
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const PolarityClass> labels,
                                                       std::span<const std::uint64_t> keys,
                                                       std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error("InvalidArgument", "need at least 2 folds");
  if (keys.size() != labels.size()) throw Error("DimensionMismatch", "one key per label required");

  std::array<std::vector<std::size_t>, kNumClasses> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[index_of(labels[i])].push_back(i);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (members[c].size() < k) {
      throw Error("FoldError", "class '" + std::string(to_string(kAllClasses[c])) + "' has " +
                                   std::to_string(members[c].size()) + " members, fewer than " +
                                   std::to_string(k) + " folds");
    }
  }

  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t next = 0;
  for (auto& group : members) {
    std::vector<std::pair<std::uint64_t, std::size_t>> order;
    order.reserve(group.size());
    for (std::size_t i : group) order.emplace_back(mix(seed, keys[i]), i);
    std::sort(order.begin(), order.end());
    for (const auto& [h, i] : order) {
      folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

std::vector<std::vector<std::size_t>> stratified_folds(const LabeledSet& ds, std::size_t k,
                                                       std::uint64_t seed) {
  std::vector<std::uint64_t> keys;
  keys.reserve(ds.size());
  for (const LabeledItem& it : ds.items()) keys.push_back(document_key(*it.doc));
  const auto labels = ds.labels();
  return stratified_folds(labels, keys, k, seed);
}

std::string_view to_string(VocabScope s) noexcept {
  return s == VocabScope::Global ? "global" : "per-fold";
}

std::optional<VocabScope> parse_vocab_scope(std::string_view s) noexcept {
  if (s == "global") return VocabScope::Global;
  if (s == "per-fold") return VocabScope::PerFold;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (models.empty()) throw Error("InvalidArgument", "no representation model selected");
  if (folds < 2) throw Error("InvalidArgument", "need at least 2 folds");
  if (min_df < 1) throw Error("InvalidArgument", "min_df must be >= 1");
  forest.validate();
}

json to_json(const ExperimentConfig& c) {
  json models = json::array();
  for (ModelKind m : c.models) models.push_back(std::string(to_string(m)));
  const ForestParams& p = c.forest;
  return {
      {"corpus", c.corpus_path},
      {"lexicon", c.lexicon_path},
      {"models", models},
      {"sampling", std::string(to_string(c.regime))},
      {"resample_scope", std::string(to_string(c.resample_scope))},
      {"vocab_scope", std::string(to_string(c.vocab_scope))},
      {"folds", c.folds},
      {"seed", c.seed},
      {"min_df", c.min_df},
      {"record_timing", c.record_timing},
      {"forest",
       {{"n_trees", p.n_trees},
        {"max_depth", p.max_depth ? json(*p.max_depth) : json(nullptr)},
        {"min_samples_split", p.min_samples_split},
        {"min_samples_leaf", p.min_samples_leaf},
        {"features_per_split", rule_name(p.features_per_split.rule)},
        {"features_per_split_k", p.features_per_split.k},
        {"bootstrap", p.bootstrap}}},
  };
}

ExperimentConfig config_from_json(const json& j) {
  try {
    ExperimentConfig c;
    c.corpus_path = j.at("corpus");
    c.lexicon_path = j.at("lexicon");
    c.models.clear();
    for (const auto& m : j.at("models")) {
      auto kind = parse_model_kind(m.get<std::string>());
      if (!kind) throw Error("ConfigFormat", "unknown model " + m.dump());
      c.models.push_back(*kind);
    }
    auto regime = parse_sampling_regime(j.at("sampling").get<std::string>());
    auto rscope = parse_resample_scope(j.at("resample_scope").get<std::string>());
    auto vscope = parse_vocab_scope(j.at("vocab_scope").get<std::string>());
    if (!regime || !rscope || !vscope) throw Error("ConfigFormat", "bad sampling or scope");
    c.regime = *regime;
    c.resample_scope = *rscope;
    c.vocab_scope = *vscope;
    c.folds = j.at("folds");
    c.seed = j.at("seed");
    c.min_df = j.at("min_df");
    c.record_timing = j.value("record_timing", false);
    const json& f = j.at("forest");
    c.forest.n_trees = f.at("n_trees");
    if (!f.at("max_depth").is_null()) c.forest.max_depth = f.at("max_depth").get<std::size_t>();
    c.forest.min_samples_split = f.at("min_samples_split");
    c.forest.min_samples_leaf = f.at("min_samples_leaf");
    const std::string rule = f.at("features_per_split");
    if (rule == "sqrt") {
      c.forest.features_per_split.rule = FeaturesPerSplit::Rule::Sqrt;
    } else if (rule == "all") {
      c.forest.features_per_split.rule = FeaturesPerSplit::Rule::All;
    } else if (rule == "fixed") {
      c.forest.features_per_split.rule = FeaturesPerSplit::Rule::Fixed;
    } else {
      throw Error("ConfigFormat", "unknown features_per_split '" + rule + "'");
    }
    c.forest.features_per_split.k = f.at("features_per_split_k");
    c.forest.bootstrap = f.at("bootstrap");
    return c;
  } catch (const json::exception& e) {
    throw Error("ConfigFormat", std::string("malformed config: ") + e.what());
  }
}

std::size_t ModelResult::vocab_size() const {
  if (fold_vocab_sizes.empty()) return 0;
  const double sum = std::accumulate(fold_vocab_sizes.begin(), fold_vocab_sizes.end(), 0.0);
  return static_cast<std::size_t>(std::llround(sum / static_cast<double>(fold_vocab_sizes.size())));
}

double ModelResult::fold_standard_error() const {
  const std::size_t n = fold_micro_f1.size();
  if (n < 2) return 0.0;
  const double mean = std::accumulate(fold_micro_f1.begin(), fold_micro_f1.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : fold_micro_f1) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

bool ExperimentReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const ModelResult& r) { return r.ok; });
}

ExperimentReport run_experiment(const Corpus& corpus, const Lexicon& lexicon,
                                const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.corpus_size = corpus.size();
  report.corpus_counts = corpus.class_counts();

  // Items are positions into the corpus; global resampling repeats some.
  std::vector<std::size_t> items(corpus.size());
  std::iota(items.begin(), items.end(), std::size_t{0});
  if (config.resample_scope == ResampleScope::Global) {
    items = resample_indices(corpus.labels, config.regime, derive_seed(config.seed, "resample-global"));
  }

  std::vector<PolarityClass> item_labels = labels_at(corpus.labels, items);
  std::vector<std::uint64_t> keys;
  keys.reserve(items.size());
  for (std::size_t i : items) keys.push_back(document_key(corpus.docs[i]));
  const auto folds =
      stratified_folds(item_labels, keys, config.folds, derive_seed(config.seed, "folds"));

  for (ModelKind kind : config.models) {
    try {
      report.results.push_back(evaluate_model(corpus, lexicon, config, kind, items, folds));
    } catch (const Error& e) {
      ModelResult failed;
      failed.model = kind;
      failed.regime = config.regime;
      failed.ok = false;
      failed.error_kind = e.kind();
      failed.error_message = e.what();
      report.results.push_back(std::move(failed));
    }
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Corpus corpus = load_corpus(config.corpus_path);
  const Lexicon lexicon = config.lexicon_path.empty() ? Lexicon{} : load_lexicon(config.lexicon_path);
  return run_experiment(corpus, lexicon, config);
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << "model,sampling,micro_p,micro_r,micro_f1,macro_f1,weighted_f1,n_docs,vocab_size,seconds\n";
  for (const ModelResult& r : report.results) {
    out << to_string(r.model) << ',' << to_string(r.regime) << ',';
    if (!r.ok) {
      out << "NA,NA,NA,NA,NA,0,0,NA\n";
      continue;
    }
    const Metrics& m = r.metrics;
    out << format_metric(m.micro.precision) << ',' << format_metric(m.micro.recall) << ','
        << format_metric(m.micro.f1) << ',' << format_metric(m.macro.f1) << ','
        << format_metric(m.weighted.f1) << ',' << r.n_docs << ',' << r.vocab_size() << ','
        << (report.config.record_timing ? format_metric(r.seconds) : std::string("0")) << '\n';
  }
}

json to_json(const ExperimentReport& report) {
  json results = json::array();
  json timing = json::object();
  for (const ModelResult& r : report.results) {
    json jr;
    jr["model"] = std::string(to_string(r.model));
    jr["sampling"] = std::string(to_string(r.regime));
    jr["status"] = r.ok ? "ok" : "failed";
    if (!r.ok) {
      jr["error"] = {{"kind", r.error_kind}, {"message", r.error_message}};
    } else {
      const Metrics& m = r.metrics;
      json per_class;
      for (PolarityClass c : kAllClasses) per_class[std::string(to_string(c))] = prf_json(m.per_class[index_of(c)]);
      jr["metrics"] = {{"micro", prf_json(m.micro)},
                       {"macro", prf_json(m.macro)},
                       {"weighted", prf_json(m.weighted)},
                       {"per_class", per_class},
                       {"accuracy", m.accuracy}};
      jr["confusion"] = r.confusion.cells();
      jr["fold_micro_f1"] = r.fold_micro_f1;
      jr["fold_standard_error"] = r.fold_standard_error();
      jr["fold_vocab_sizes"] = r.fold_vocab_sizes;
      jr["vocab_size"] = r.vocab_size();
      jr["degenerate_vocabulary"] = r.degenerate_vocabulary;
      jr["n_docs"] = r.n_docs;
      jr["test_class_counts"] = counts_json(r.test_counts);
    }
    results.push_back(std::move(jr));
    timing[std::string(to_string(r.model))] = r.seconds;
  }
  return {{"schema_version", kReportSchemaVersion},
          {"config", to_json(report.config)},
          {"corpus", {{"size", report.corpus_size}, {"class_counts", counts_json(report.corpus_counts)}}},
          {"status", report.ok() ? "ok" : "failed"},
          {"results", results},
          {"timing_seconds", timing}};
}

std::string render_table(std::istream& csv) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(csv, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream out;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    for (std::size_t i = 0; i < rows[ri].size(); ++i) {
      if (i) out << "  ";
      // first two columns are labels, the rest numbers
      if (i < 2) {
        out << std::left << std::setw(static_cast<int>(width[i])) << rows[ri][i];
      } else {
        out << std::right << std::setw(static_cast<int>(width[i])) << rows[ri][i];
      }
    }
    out << '\n';
    if (ri == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace emobow
