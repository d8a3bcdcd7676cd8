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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "emobow/corpus.hpp"
#include "emobow/evaluate.hpp"
#include "emobow/synth.hpp"

// Subcommands of the emobow executable. Each returns a process exit code
// and writes its human-readable summary to `log`.
namespace emobow::app {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;          // I/O, XML, format errors
inline constexpr int kExperimentError = 2; // FoldError, EmptyVocabulary, ...

struct IngestOptions {
  std::string input;  // directory (every *.xml inside, sorted) or single file
  std::string output;
  ReviewSchema schema;
};
int cmd_ingest(const IngestOptions& o, std::ostream& log);

struct TransformOptions {
  std::string corpus;
  std::string lexicon;
  ModelKind model = ModelKind::M;
  std::string output;
};
int cmd_transform(const TransformOptions& o, std::ostream& log);

struct TrainOptions {
  std::string corpus;
  std::string lexicon;
  ModelKind model = ModelKind::M;
  SamplingRegime regime = SamplingRegime::Natural;
  std::size_t min_df = 2;
  std::uint64_t seed = 42;
  ForestParams forest;
  std::string output;
};
int cmd_train(const TrainOptions& o, std::ostream& log);

struct PredictOptions {
  std::string model_file;
  std::string lexicon;
  std::string corpus;
  std::string output;
};
int cmd_predict(const PredictOptions& o, std::ostream& log);

struct EvaluateOptions {
  ExperimentConfig config;
  std::string output_prefix;  // writes <prefix>.csv and <prefix>.json
};
int cmd_evaluate(const EvaluateOptions& o, std::ostream& log);

int cmd_report(const std::string& csv_path, std::ostream& out);

struct SynthOptions {
  SynthSpec spec;
  std::string output;
  std::string lexicon_output;
};
int cmd_synth(const SynthOptions& o, std::ostream& log);

// Writes through a temporary file renamed into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace emobow::app
