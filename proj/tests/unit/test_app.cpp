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

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emobow/app.hpp"

using namespace emobow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("emobow-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  static inline int counter = 0;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<nlohmann::json> read_ndjson(const std::string& p) {
  std::vector<nlohmann::json> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

// Synthetic corpus and lexicon on disk.
void make_synth(const TempDir& dir, ClassCounts sizes = {40, 40, 40}) {
  app::SynthOptions o;
  o.spec.class_sizes = sizes;
  o.spec.filler_vocab = 100;
  o.output = dir / "corpus.jsonl";
  o.lexicon_output = dir / "lexicon.tsv";
  std::ostringstream log;
  REQUIRE(app::cmd_synth(o, log) == app::kOk);
}

}  // namespace

TEST_CASE("ingest: three reviews give one per class") {
  TempDir dir;
  std::ostringstream log;
  app::IngestOptions o;
  o.input = EMOBOW_FIXTURES "/three_reviews.xml";
  o.output = dir / "cache.jsonl";
  CHECK(app::cmd_ingest(o, log) == app::kOk);
  const auto recs = read_ndjson(o.output);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0]["class"] == "negative");
  CHECK(recs[1]["class"] == "neutral");
  CHECK(recs[2]["class"] == "positive");
  CHECK(recs[2]["rating"] == 4);
  CHECK(recs[0]["text"] == "Dreadful and boring plot.");
  const Corpus c = load_corpus(o.output);
  CHECK(c.class_counts() == ClassCounts{1, 1, 1});
}

TEST_CASE("ingest: a directory with no XML gives an empty cache") {
  TempDir dir;
  fs::create_directories(dir.path / "in");
  std::ostringstream log;
  app::IngestOptions o;
  o.input = dir / "in";
  o.output = dir / "cache.jsonl";
  CHECK(app::cmd_ingest(o, log) == app::kOk);
  CHECK(slurp(o.output).empty());
  CHECK(log.str().find("reviews: 0") != std::string::npos);
}

TEST_CASE("ingest: malformed file is reported, others still read") {
  TempDir dir;
  fs::create_directories(dir.path / "in");
  fs::copy_file(EMOBOW_FIXTURES "/three_reviews.xml", dir.path / "in" / "a.xml");
  std::ofstream(dir.path / "in" / "b.xml") << "<reviews><review><rating>2</rating>";
  std::ostringstream log;
  app::IngestOptions o;
  o.input = dir / "in";
  o.output = dir / "cache.jsonl";
  CHECK(app::cmd_ingest(o, log) == app::kFailed);
  CHECK(read_ndjson(o.output).size() == 3);
  CHECK(log.str().find("b.xml") != std::string::npos);
}

TEST_CASE("transform, train and predict") {
  TempDir dir;
  make_synth(dir);
  std::ostringstream log;

  app::TransformOptions t;
  t.corpus = dir / "corpus.jsonl";
  t.lexicon = dir / "lexicon.tsv";
  t.model = ModelKind::ES;
  t.output = dir / "es.jsonl";
  REQUIRE(app::cmd_transform(t, log) == app::kOk);
  const auto rows = read_ndjson(t.output);
  REQUIRE(rows.size() == 120);
  for (const auto& r : rows) {
    CHECK(r["model"] == "es");
    for (const auto& tok : r["tokens"]) CHECK(tok.get<std::string>().rfind("word", 0) != 0);
  }

  app::TrainOptions tr;
  tr.corpus = t.corpus;
  tr.lexicon = t.lexicon;
  tr.model = ModelKind::ES;
  tr.forest.n_trees = 20;
  tr.output = dir / "model.json";
  REQUIRE(app::cmd_train(tr, log) == app::kOk);

  app::PredictOptions p;
  p.model_file = tr.output;
  p.lexicon = t.lexicon;
  p.corpus = t.corpus;
  p.output = dir / "pred.jsonl";
  REQUIRE(app::cmd_predict(p, log) == app::kOk);
  const auto preds = read_ndjson(p.output);
  REQUIRE(preds.size() == 120);
  std::size_t agree = 0;
  for (const auto& r : preds) agree += r["predicted"] == r["class"];
  CHECK(agree >= 110);
}

TEST_CASE("evaluate writes identical reports on repeated runs") {
  TempDir dir;
  make_synth(dir);
  app::EvaluateOptions o;
  o.config.corpus_path = dir / "corpus.jsonl";
  o.config.lexicon_path = dir / "lexicon.tsv";
  o.config.models = {ModelKind::ES, ModelKind::M};
  o.config.forest.n_trees = 10;
  o.config.folds = 4;
  std::ostringstream log;
  o.output_prefix = dir / "a";
  REQUIRE(app::cmd_evaluate(o, log) == app::kOk);
  o.output_prefix = dir / "b";
  REQUIRE(app::cmd_evaluate(o, log) == app::kOk);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

  // Re-running from the snapshot reproduces the numbers.
  const auto snap = nlohmann::json::parse(slurp(dir / "a.json"));
  o.config = config_from_json(snap["config"]);
  o.output_prefix = dir / "c";
  REQUIRE(app::cmd_evaluate(o, log) == app::kOk);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "c.csv"));

  std::ostringstream table;
  CHECK(app::cmd_report(dir / "a.csv", table) == app::kOk);
  CHECK(table.str().find("micro_f1") != std::string::npos);
}

TEST_CASE("evaluate: too few documents per class is an experiment error") {
  TempDir dir;
  make_synth(dir, {3, 20, 20});
  app::EvaluateOptions o;
  o.config.corpus_path = dir / "corpus.jsonl";
  o.config.lexicon_path = dir / "lexicon.tsv";
  o.config.models = {ModelKind::ES};
  o.config.regime = SamplingRegime::Natural;
  o.output_prefix = dir / "r";
  std::ostringstream log;
  CHECK(app::cmd_evaluate(o, log) == app::kExperimentError);
  CHECK(log.str().find("FoldError") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "r.csv"));
}

TEST_CASE("atomic write replaces content") {
  TempDir dir;
  app::write_file_atomic(dir / "f.txt", "one");
  app::write_file_atomic(dir / "f.txt", "two");
  CHECK(slurp(dir / "f.txt") == "two");
  app::write_file_atomic(dir / "sub/x.txt", "z");
  CHECK(slurp(dir / "sub/x.txt") == "z");
  CHECK_THROWS(app::write_file_atomic(dir / "f.txt/x.txt", "z"));
}
