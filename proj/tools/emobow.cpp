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

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "emobow/app.hpp"

namespace {

using namespace emobow;

std::vector<ModelKind> parse_models(const std::string& list) {
  std::vector<ModelKind> models;
  if (list == "all") return {kAllModelKinds.begin(), kAllModelKinds.end()};
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto kind = parse_model_kind(name);
    if (!kind) throw CLI::ValidationError("--models", "unknown model '" + name + "'");
    models.push_back(*kind);
  }
  return models;
}

ModelKind parse_model(const std::string& name) {
  auto kind = parse_model_kind(name);
  if (!kind) throw CLI::ValidationError("--model", "unknown model '" + name + "'");
  return *kind;
}

ClassCounts parse_sizes(const std::string& s) {
  ClassCounts out{};
  std::stringstream ss(s);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == kNumClasses) throw CLI::ValidationError("--sizes", "expected neg,neu,pos");
    out[i++] = std::stoul(part);
  }
  if (i != kNumClasses) throw CLI::ValidationError("--sizes", "expected neg,neu,pos");
  return out;
}

// Forest flags shared by train and evaluate.
struct ForestFlags {
  std::size_t trees = 100;
  std::optional<std::size_t> max_depth;
  std::size_t min_split = 2;
  std::size_t min_leaf = 1;
  std::string max_features = "sqrt";
  bool no_bootstrap = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--trees", trees, "Number of trees")->capture_default_str();
    cmd->add_option("--max-depth", max_depth, "Maximum depth (unbounded when omitted)");
    cmd->add_option("--min-samples-split", min_split)->capture_default_str();
    cmd->add_option("--min-samples-leaf", min_leaf)->capture_default_str();
    cmd->add_option("--max-features", max_features, "sqrt | all | <k>")->capture_default_str();
    cmd->add_flag("--no-bootstrap", no_bootstrap);
  }

  ForestParams params() const {
    ForestParams p;
    p.n_trees = trees;
    p.max_depth = max_depth;
    p.min_samples_split = min_split;
    p.min_samples_leaf = min_leaf;
    p.bootstrap = !no_bootstrap;
    if (max_features == "sqrt") {
      p.features_per_split.rule = FeaturesPerSplit::Rule::Sqrt;
    } else if (max_features == "all") {
      p.features_per_split.rule = FeaturesPerSplit::Rule::All;
    } else {
      p.features_per_split.rule = FeaturesPerSplit::Rule::Fixed;
      p.features_per_split.k = std::stoul(max_features);
    }
    p.validate();
    return p;
  }
};

template <class Enum, class Parser>
Enum parse_enum(const std::string& flag, const std::string& value, Parser parse) {
  auto v = parse(value);
  if (!v) throw CLI::ValidationError(flag, "unknown value '" + value + "'");
  return *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"emobow: lexicon-conditioned bag-of-words polarity experiments"};
  cli.require_subcommand(1);
  int threads = 0;
  cli.add_option("--threads", threads, "Worker threads (0 = OpenMP default)");

  // ingest
  app::IngestOptions ingest;
  auto* c_ingest = cli.add_subcommand("ingest", "Extract reviews from Amazon XML into an NDJSON cache");
  c_ingest->add_option("input", ingest.input, "XML file or directory")->required();
  c_ingest->add_option("-o,--out", ingest.output, "NDJSON cache")->required();
  c_ingest->add_option("--review-element", ingest.schema.review_element)->capture_default_str();
  c_ingest->add_option("--content-element", ingest.schema.content_element)->capture_default_str();
  c_ingest->add_option("--rating-element", ingest.schema.rating_element)->capture_default_str();

  // transform
  app::TransformOptions transform;
  std::string transform_model = "m";
  auto* c_transform = cli.add_subcommand("transform", "Apply one representation model to an NDJSON corpus");
  c_transform->add_option("--corpus", transform.corpus)->required();
  c_transform->add_option("--lexicon", transform.lexicon);
  c_transform->add_option("--model", transform_model, "m,es,s,e,es+g,s+g,e+g,ces+m,cs+m,ce+m,m-es")->capture_default_str();
  c_transform->add_option("-o,--out", transform.output)->required();

  // train
  app::TrainOptions train;
  std::string train_model = "m";
  std::string train_sampling = "natural";
  ForestFlags train_forest;
  auto* c_train = cli.add_subcommand("train", "Train a forest on a whole corpus and save it");
  c_train->add_option("--corpus", train.corpus)->required();
  c_train->add_option("--lexicon", train.lexicon);
  c_train->add_option("--model", train_model)->capture_default_str();
  c_train->add_option("--sampling", train_sampling, "natural | under | over")->capture_default_str();
  c_train->add_option("--min-df", train.min_df)->capture_default_str();
  c_train->add_option("--seed", train.seed)->capture_default_str();
  c_train->add_option("-o,--out", train.output)->required();
  train_forest.attach(c_train);

  // predict
  app::PredictOptions predict;
  auto* c_predict = cli.add_subcommand("predict", "Classify an NDJSON corpus with a saved model");
  c_predict->add_option("--model-file", predict.model_file)->required();
  c_predict->add_option("--lexicon", predict.lexicon);
  c_predict->add_option("--corpus", predict.corpus)->required();
  c_predict->add_option("-o,--out", predict.output)->required();

  // evaluate
  app::EvaluateOptions evaluate;
  std::string eval_models = "all";
  std::string eval_sampling = "over";
  std::string eval_rscope = "per-fold";
  std::string eval_vscope = "per-fold";
  std::string eval_config;
  ForestFlags eval_forest;
  ExperimentConfig& ec = evaluate.config;
  auto* c_eval = cli.add_subcommand("evaluate", "Stratified k-fold cross-validation over representation models");
  c_eval->add_option("--corpus", ec.corpus_path);
  c_eval->add_option("--lexicon", ec.lexicon_path);
  c_eval->add_option("--models", eval_models, "Comma list or 'all'")->capture_default_str();
  c_eval->add_option("--sampling", eval_sampling, "natural | under | over")->capture_default_str();
  c_eval->add_option("--resample-scope", eval_rscope, "global | per-fold")->capture_default_str();
  c_eval->add_option("--vocab-scope", eval_vscope, "global | per-fold")->capture_default_str();
  c_eval->add_option("--folds", ec.folds)->capture_default_str();
  c_eval->add_option("--seed", ec.seed)->capture_default_str();
  c_eval->add_option("--min-df", ec.min_df)->capture_default_str();
  c_eval->add_flag("--record-timing", ec.record_timing, "Write wall-clock seconds into the CSV");
  c_eval->add_option("--config", eval_config, "Re-run the configuration embedded in a JSON report");
  c_eval->add_option("-o,--out", evaluate.output_prefix, "Output prefix for .csv and .json")->required();
  eval_forest.attach(c_eval);

  // report
  std::string report_csv;
  auto* c_report = cli.add_subcommand("report", "Render a CSV report as a table");
  c_report->add_option("csv", report_csv)->required();

  // synth
  app::SynthOptions synth;
  std::string synth_sizes = "300,300,300";
  auto* c_synth = cli.add_subcommand("synth", "Generate a planted-signal corpus and its lexicon");
  c_synth->add_option("--sizes", synth_sizes, "Documents per class: neg,neu,pos")->capture_default_str();
  c_synth->add_option("--signal", synth.spec.signal)->capture_default_str();
  c_synth->add_option("--filler-vocab", synth.spec.filler_vocab)->capture_default_str();
  c_synth->add_option("--cue-words", synth.spec.cue_words)->capture_default_str();
  c_synth->add_option("--noise-affect-words", synth.spec.noise_affect_words)->capture_default_str();
  c_synth->add_option("--length-skew", synth.spec.length_skew)->capture_default_str();
  c_synth->add_option("--seed", synth.spec.seed)->capture_default_str();
  c_synth->add_option("-o,--out", synth.output)->required();
  c_synth->add_option("--lexicon-out", synth.lexicon_output)->required();

  CLI11_PARSE(cli, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (c_ingest->parsed()) return app::cmd_ingest(ingest, std::cout);
    if (c_transform->parsed()) {
      transform.model = parse_model(transform_model);
      return app::cmd_transform(transform, std::cout);
    }
    if (c_train->parsed()) {
      train.model = parse_model(train_model);
      train.regime = parse_enum<SamplingRegime>("--sampling", train_sampling, parse_sampling_regime);
      train.forest = train_forest.params();
      return app::cmd_train(train, std::cout);
    }
    if (c_predict->parsed()) return app::cmd_predict(predict, std::cout);
    if (c_eval->parsed()) {
      if (!eval_config.empty()) {
        std::ifstream in(eval_config);
        if (!in) throw Error("Io", "cannot open '" + eval_config + "'");
        const auto j = nlohmann::json::parse(in);
        ec = config_from_json(j.contains("config") ? j.at("config") : j);
      } else {
        if (ec.corpus_path.empty()) throw CLI::ValidationError("--corpus", "required without --config");
        ec.models = parse_models(eval_models);
        ec.regime = parse_enum<SamplingRegime>("--sampling", eval_sampling, parse_sampling_regime);
        ec.resample_scope = parse_enum<ResampleScope>("--resample-scope", eval_rscope, parse_resample_scope);
        ec.vocab_scope = parse_enum<VocabScope>("--vocab-scope", eval_vscope, parse_vocab_scope);
        ec.forest = eval_forest.params();
      }
      return app::cmd_evaluate(evaluate, std::cout);
    }
    if (c_report->parsed()) return app::cmd_report(report_csv, std::cout);
    if (c_synth->parsed()) {
      synth.spec.class_sizes = parse_sizes(synth_sizes);
      return app::cmd_synth(synth, std::cout);
    }
  } catch (const CLI::Error& e) {
    return cli.exit(e);
  } catch (const Error& e) {
    std::cerr << "error [" << e.kind() << "]: " << e.what() << '\n';
    return app::kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return app::kFailed;
  }
  return app::kOk;
}
