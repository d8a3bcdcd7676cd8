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

#include "emobow/app.hpp"

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emobow/balance.hpp"
#include "emobow/features.hpp"
#include "emobow/forest.hpp"
#include "emobow/represent.hpp"

namespace emobow::app {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kModelFormat = "emobow-model";
constexpr int kModelVersion = 1;

void print_distribution(std::ostream& log, const ClassCounts& counts) {
  const auto dist = class_distribution(counts);
  for (PolarityClass c : kAllClasses) {
    const ClassShare& s = dist[index_of(c)];
    log << "  " << std::left << std::setw(9) << to_string(c) << std::right << std::setw(10)
        << s.count << "  " << std::fixed << std::setprecision(4) << s.proportion << '\n';
  }
  log.unsetf(std::ios::floatfield);
}

std::vector<fs::path> xml_inputs(const std::string& input) {
  std::vector<fs::path> files;
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::recursive_directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".xml") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(input)) {
    files.emplace_back(input);
  } else {
    throw Error("Io", "no such file or directory '" + input + "'");
  }
  return files;
}

std::vector<TokenSeq> transform_corpus(const Corpus& corpus, const Lexicon& lex, ModelKind kind) {
  std::vector<TokenSeq> out(corpus.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(corpus.size()); ++i) {
    out[static_cast<std::size_t>(i)] = transform(corpus.docs[static_cast<std::size_t>(i)], lex, kind);
  }
  return out;
}

Lexicon maybe_lexicon(const std::string& path) { return path.empty() ? Lexicon{} : load_lexicon(path); }

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("Io", "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("Io", "write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

int cmd_ingest(const IngestOptions& o, std::ostream& log) {
  const auto files = xml_inputs(o.input);
  std::ostringstream cache;
  ClassCounts counts{};
  std::size_t skipped = 0;
  int status = kOk;
  for (const fs::path& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      log << "error: cannot open " << file.string() << '\n';
      status = kFailed;
      continue;
    }
    try {
      const ParseStats stats = parse_reviews(
          in, file.string(),
          [&](RawReview&& r) {
            const PolarityClass c = rating_to_class(r.rating);
            ++counts[index_of(c)];
            write_record(cache, CorpusRecord{std::move(r.content), r.rating, c});
          },
          o.schema);
      skipped += stats.skipped;
    } catch (const Error& e) {
      log << "error: " << e.what() << '\n';
      status = kFailed;
    }
  }
  write_file_atomic(o.output, cache.str());
  log << "files: " << files.size() << "  reviews: " << counts[0] + counts[1] + counts[2]
      << "  skipped: " << skipped << '\n';
  print_distribution(log, counts);
  return status;
}

int cmd_transform(const TransformOptions& o, std::ostream& log) {
  const Corpus corpus = load_corpus(o.corpus, false);
  const Lexicon lex = maybe_lexicon(o.lexicon);
  const auto docs = transform_corpus(corpus, lex, o.model);
  std::ostringstream out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    json j;
    j["tokens"] = docs[i];
    if (corpus.labeled[i]) j["class"] = std::string(to_string(corpus.labels[i]));
    j["model"] = std::string(to_string(o.model));
    out << j.dump() << '\n';
  }
  write_file_atomic(o.output, out.str());
  log << "transformed " << docs.size() << " documents with model " << to_string(o.model) << '\n';
  return kOk;
}

int cmd_train(const TrainOptions& o, std::ostream& log) {
  const Corpus corpus = load_corpus(o.corpus);
  const Lexicon lex = maybe_lexicon(o.lexicon);
  const auto docs = transform_corpus(corpus, lex, o.model);

  const auto picked = resample_indices(corpus.labels, o.regime, derive_seed(o.seed, "resample"));
  const Vocabulary vocab = build_vocabulary(docs, picked, o.min_df);
  std::vector<std::size_t> all(docs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const SparseMatrix X = vectorize_all(docs, all, vocab);
  ForestParams params = o.forest;
  params.seed = derive_seed(o.seed, "forest");
  const std::vector<std::uint32_t> sample(picked.begin(), picked.end());
  const Forest forest = train_forest(X, corpus.labels, sample, params);

  json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["model"] = std::string(to_string(o.model));
  j["min_df"] = o.min_df;
  j["vocabulary"] = vocab.tokens();
  j["doc_freq"] = vocab.doc_freqs();
  j["forest"] = forest_to_json(forest);
  write_file_atomic(o.output, j.dump() + "\n");
  log << "trained " << params.n_trees << " trees on " << sample.size() << " documents, "
      << vocab.size() << " features\n";
  return kOk;
}

int cmd_predict(const PredictOptions& o, std::ostream& log) {
  std::ifstream in(o.model_file, std::ios::binary);
  if (!in) throw Error("Io", "cannot open model '" + o.model_file + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("ModelFormat", std::string("malformed model file: ") + e.what());
  }
  if (j.value("format", "") != kModelFormat || j.value("version", 0) != kModelVersion) {
    throw Error("ModelFormat", "not an emobow model file (version " + std::to_string(kModelVersion) + ")");
  }
  const auto kind = parse_model_kind(j.at("model").get<std::string>());
  if (!kind) throw Error("ModelFormat", "unknown model kind");
  std::vector<std::pair<std::string, std::size_t>> kept;
  const auto tokens = j.at("vocabulary").get<std::vector<std::string>>();
  const auto dfs = j.at("doc_freq").get<std::vector<std::size_t>>();
  if (tokens.size() != dfs.size()) throw Error("ModelFormat", "vocabulary and doc_freq differ in length");
  for (std::size_t i = 0; i < tokens.size(); ++i) kept.emplace_back(tokens[i], dfs[i]);
  const Vocabulary vocab = Vocabulary::from_counts(std::move(kept), j.at("min_df").get<std::size_t>());
  const Forest forest = forest_from_json(j.at("forest"));

  const Corpus corpus = load_corpus(o.corpus, false);
  const Lexicon lex = maybe_lexicon(o.lexicon);
  const auto docs = transform_corpus(corpus, lex, *kind);
  std::vector<std::size_t> all(docs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const SparseMatrix X = vectorize_all(docs, all, vocab);
  const auto predicted = forest.predict_all(X);

  std::ostringstream out;
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const ClassWeights share = forest.predict_distribution(X.row(i));
    json r;
    r["predicted"] = std::string(to_string(predicted[i]));
    r["votes"] = {{"negative", share[0]}, {"neutral", share[1]}, {"positive", share[2]}};
    if (corpus.labeled[i]) {
      r["class"] = std::string(to_string(corpus.labels[i]));
      cm.add(corpus.labels[i], predicted[i]);
    }
    out << r.dump() << '\n';
  }
  write_file_atomic(o.output, out.str());
  log << "predicted " << predicted.size() << " documents";
  if (cm.total() > 0) log << "; micro F1 on labeled records " << compute_metrics(cm).micro.f1;
  log << '\n';
  return kOk;
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& log) {
  ExperimentReport report;
  try {
    report = run_experiment(o.config);
  } catch (const Error& e) {
    log << "error [" << e.kind() << "]: " << e.what() << '\n';
    if (e.kind() == "FoldError" || e.kind() == "EmptyVocabulary" || e.kind() == "EmptyClass") {
      return kExperimentError;
    }
    return kFailed;
  }

  std::ostringstream csv;
  write_csv(csv, report);
  write_file_atomic(o.output_prefix + ".csv", csv.str());
  write_file_atomic(o.output_prefix + ".json", to_json(report).dump(2) + "\n");

  std::istringstream table(csv.str());
  log << render_table(table);
  for (const ModelResult& r : report.results) {
    if (!r.ok) log << "model " << to_string(r.model) << " failed [" << r.error_kind << "]: " << r.error_message << '\n';
  }
  return report.ok() ? kOk : kExperimentError;
}

int cmd_report(const std::string& csv_path, std::ostream& out) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error("Io", "cannot open report '" + csv_path + "'");
  out << render_table(in);
  return kOk;
}

int cmd_synth(const SynthOptions& o, std::ostream& log) {
  const SynthCorpus synth = generate_synthetic(o.spec);
  std::ostringstream corpus;
  for (const CorpusRecord& r : synth.records) write_record(corpus, r);
  write_file_atomic(o.output, corpus.str());
  std::ostringstream lex;
  write_lexicon(lex, synth.lexicon);
  write_file_atomic(o.lexicon_output, lex.str());

  log << "documents: " << synth.records.size() << "  lexicon words: " << synth.lexicon.size()
      << "  bayes accuracy (cue words): " << bayes_accuracy(o.spec) << '\n';
  print_distribution(log, [&] {
    ClassCounts c{};
    for (const CorpusRecord& r : synth.records) ++c[index_of(r.label)];
    return c;
  }());
  return kOk;
}

}  // namespace emobow::app
