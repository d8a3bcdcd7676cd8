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

// Acceptance runner: prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero when any criterion fails. Set EMOBOW_NRC_LEXICON to the NRC
// word-level file to enable the lexicon scale check.

#include <omp.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "emobow/app.hpp"
#include "emobow/balance.hpp"
#include "emobow/evaluate.hpp"
#include "emobow/forest.hpp"
#include "emobow/represent.hpp"
#include "emobow/synth.hpp"
#include "golden.hpp"

using namespace emobow;
namespace fs = std::filesystem;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

// Micro P = R = F1 on every experiment run here; checked by criterion 6.
std::size_t g_micro_checked = 0;
std::size_t g_micro_violations = 0;

void note_report(const ExperimentReport& r) {
  for (const ModelResult& m : r.results) {
    if (!m.ok) continue;
    ++g_micro_checked;
    const PRF& p = m.metrics.micro;
    if (!(p.precision == p.recall && p.recall == p.f1)) ++g_micro_violations;
  }
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Corpus to_corpus(const SynthCorpus& s) {
  Corpus c;
  for (const auto& r : s.records) {
    c.docs.push_back(normalize(r.text));
    c.labels.push_back(r.label);
    c.labeled.push_back(true);
  }
  return c;
}

std::map<std::string, int> multiset(const TokenSeq& t) {
  std::map<std::string, int> m;
  for (const auto& w : t) ++m[w];
  return m;
}

bool sub_multiset(const TokenSeq& a, const TokenSeq& b) {
  auto mb = multiset(b);
  for (const auto& [w, n] : multiset(a))
    if (mb[w] < n) return false;
  return true;
}

const ModelResult* find(const ExperimentReport& r, ModelKind k) {
  for (const auto& m : r.results)
    if (m.model == k && m.ok) return &m;
  return nullptr;
}

// ---------------------------------------------------------------------------

Outcome golden_transforms() {
  const TokenSeq doc = normalize(testing::kGrishamText);
  const Lexicon lex = testing::grisham_lexicon();
  std::string bad;
  for (const auto& [kind, expected] : testing::golden_outputs())
    if (!testing::matches_golden(kind, transform(doc, lex, kind), expected)) bad += " " + std::string(to_string(kind));
  if (!bad.empty()) return {Status::Fail, "mismatch:" + bad};
  return {Status::Pass, "11/11 models match"};
}

Outcome transform_algebra() {
  std::mt19937_64 rng(2024);
  const Lexicon empty;
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Lexicon lex = testing::random_lexicon(rng, 40);
    const TokenSeq doc = testing::random_doc(rng, 40, 30);
    const TokenSeq m = transform(doc, lex, ModelKind::M);
    const TokenSeq es = transform(doc, lex, ModelKind::ES);
    TokenSeq joined = es;
    const TokenSeq rest = transform(doc, lex, ModelKind::M_MINUS_ES);
    joined.insert(joined.end(), rest.begin(), rest.end());
    violations += multiset(joined) != multiset(m);
    for (ModelKind g : {ModelKind::ES_G, ModelKind::S_G, ModelKind::E_G})
      violations += transform(doc, lex, g).size() != m.size();
    violations += !sub_multiset(transform(doc, lex, ModelKind::S), es);
    violations += !sub_multiset(transform(doc, lex, ModelKind::E), es);
    for (ModelKind k : {ModelKind::CES_M, ModelKind::CS_M, ModelKind::CE_M, ModelKind::M_MINUS_ES})
      violations += transform(doc, empty, k) != doc;
  }
  return {violations == 0 ? Status::Pass : Status::Fail,
          "1000 pairs, " + std::to_string(violations) + " violations"};
}

Outcome sampling() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(1, 60);
  std::size_t violations = 0;
  auto pointers = [](const LabeledSet& ds) {
    std::map<const TokenSeq*, int> m;
    for (const auto& it : ds.items()) ++m[it.doc.get()];
    return m;
  };
  auto contained = [&](const LabeledSet& a, const LabeledSet& b) {
    auto mb = pointers(b);
    for (const auto& [p, n] : pointers(a))
      if (mb[p] < n) return false;
    return true;
  };
  for (int trial = 0; trial < 500; ++trial) {
    ClassCounts counts{size(rng), size(rng), size(rng)};
    std::vector<PolarityClass> labels;
    for (PolarityClass c : kAllClasses) labels.insert(labels.end(), counts[index_of(c)], c);
    std::shuffle(labels.begin(), labels.end(), rng);
    LabeledSet ds;
    for (std::size_t i = 0; i < labels.size(); ++i) ds.push_back({"d" + std::to_string(i)}, labels[i]);
    const std::size_t lo = *std::min_element(counts.begin(), counts.end());
    const std::size_t hi = *std::max_element(counts.begin(), counts.end());
    const std::uint64_t seed = rng();

    const LabeledSet under = undersample(ds, seed);
    const LabeledSet over = oversample(ds, seed);
    violations += under.class_counts() != ClassCounts{lo, lo, lo};
    violations += over.class_counts() != ClassCounts{hi, hi, hi};
    violations += !contained(under, ds);
    violations += !contained(ds, over);
    const LabeledSet under2 = undersample(ds, seed), over2 = oversample(ds, seed);
    for (std::size_t i = 0; i < under.size(); ++i) violations += under[i].doc != under2[i].doc;
    for (std::size_t i = 0; i < over.size(); ++i) violations += over[i].doc != over2[i].doc;
  }
  return {violations == 0 ? Status::Pass : Status::Fail,
          "500 sets, " + std::to_string(violations) + " violations"};
}

// Entropy written out independently of the library, natural log based.
double oracle_entropy(const ClassWeights& w) {
  const double total = w[0] + w[1] + w[2];
  double h = 0;
  for (double c : w)
    if (c > 0) h += c / total * std::log(total / c);
  return h / std::log(2.0);
}

Outcome entropy_and_gain() {
  for (std::size_t k = 1; k <= 1000; ++k)
    if (entropy(ClassCounts{k, k, 0}) != 1.0) return {Status::Fail, "entropy({k,k}) != 1 at k=" + std::to_string(k)};

  const double h = entropy(ClassCounts{13, 9, 78});
  const double oracle = oracle_entropy({13, 9, 78});
  if (std::abs(h - oracle) > 1e-3) return {Status::Fail, "13/9/78 entropy " + fmt("%.6f", h) + " vs oracle " + fmt("%.6f", oracle)};

  // Gain audit on small trees: route the weighted training rows again and
  // recompute every split's gain with the oracle entropy.
  std::mt19937_64 rng(404);
  std::size_t splits = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20 + static_cast<std::size_t>(trial) * 4;  // up to 176 rows
    const std::size_t dim = 15;
    SparseMatrix X(dim);
    std::vector<PolarityClass> y;
    std::bernoulli_distribution on(0.3);
    std::uniform_int_distribution<std::uint32_t> cnt(1, 4);
    std::uniform_int_distribution<int> cls(0, 2);
    for (std::size_t i = 0; i < n; ++i) {
      const int c = cls(rng);
      CountVector v{{}, dim};
      for (std::uint32_t f = 0; f < dim; ++f) {
        std::uint32_t x = on(rng) ? cnt(rng) : 0;
        if (f == static_cast<std::uint32_t>(c) && on(rng)) x += 2;
        if (x) v.entries.push_back({f, x});
      }
      X.push_back(v);
      y.push_back(static_cast<PolarityClass>(c));
    }
    ForestParams p;
    p.n_trees = 5;
    p.seed = static_cast<std::uint64_t>(trial);
    std::vector<std::uint32_t> rows(n);
    for (std::uint32_t i = 0; i < n; ++i) rows[i] = i;
    std::vector<double> weights(n);
    std::uniform_int_distribution<int> mult(0, 2);
    for (double& w : weights) w = mult(rng);
    weights[0] = 1;
    std::mt19937_64 tree_rng(p.seed);
    const Tree t = grow_tree(X, y, rows, weights, p, tree_rng);

    std::vector<ClassWeights> seen(t.nodes().size(), ClassWeights{});
    for (std::size_t i = 0; i < n; ++i) {
      if (weights[i] == 0) continue;
      std::uint32_t node = 0;
      while (true) {
        seen[node][index_of(y[i])] += weights[i];
        const TreeNode& nd = t.nodes()[node];
        if (nd.is_leaf()) break;
        node = X.row(i).value(static_cast<std::uint32_t>(nd.feature)) <= nd.threshold ? nd.left : nd.right;
      }
    }
    for (const TreeNode& nd : t.nodes()) {
      if (nd.is_leaf()) continue;
      const std::size_t self = static_cast<std::size_t>(&nd - t.nodes().data());
      const ClassWeights& l = seen[nd.left];
      const ClassWeights& r = seen[nd.right];
      const double nl = l[0] + l[1] + l[2], nr = r[0] + r[1] + r[2];
      const double g = oracle_entropy(seen[self]) - (nl * oracle_entropy(l) + nr * oracle_entropy(r)) / (nl + nr);
      worst = std::max(worst, std::abs(g - nd.gain));
      if (nd.gain < 0) worst = std::max(worst, 1.0);
      ++splits;
    }
  }
  const std::string detail = "H(13/9/78)=" + fmt("%.5f", h) + " bits (oracle " + fmt("%.5f", oracle) +
                             "); " + std::to_string(splits) + " splits audited, max |gain error| " +
                             fmt("%.2e", worst);
  return {worst <= 1e-9 ? Status::Pass : Status::Fail, detail};
}

Outcome forest_sanity() {
  const auto t0 = std::chrono::steady_clock::now();
  SynthSpec spec;
  spec.class_sizes = {300, 300, 300};
  spec.signal = 1.0;
  const SynthCorpus s = generate_synthetic(spec);
  ExperimentConfig cfg;
  cfg.models = {ModelKind::ES, ModelKind::M_MINUS_ES};
  const ExperimentReport r = run_experiment(to_corpus(s), s.lexicon, cfg);
  note_report(r);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const ModelResult* es = find(r, ModelKind::ES);
  const ModelResult* rest = find(r, ModelKind::M_MINUS_ES);
  if (!es || !rest) return {Status::Fail, "a model failed to run"};
  const double f_es = es->metrics.micro.f1, f_rest = rest->metrics.micro.f1;
  const bool ok = f_es >= 0.95 && f_rest <= 0.45 && secs < 60.0;
  return {ok ? Status::Pass : Status::Fail, "ES " + fmt("%.4f", f_es) + " (>= 0.95), M-ES " + fmt("%.4f", f_rest) +
                                                " (<= 0.45), " + fmt("%.1f", secs) + " s (< 60)"};
}

Outcome metric_identities() {
  SynthSpec spec;
  spec.class_sizes = {130, 90, 780};
  const SynthCorpus s = generate_synthetic(spec);
  ExperimentConfig cfg;
  cfg.models = {ModelKind::M};
  cfg.regime = SamplingRegime::Natural;
  cfg.forest.n_trees = 10;
  cfg.forest.max_depth = 0;  // every tree is one leaf: the training majority
  const ExperimentReport r = run_experiment(to_corpus(s), s.lexicon, cfg);
  note_report(r);
  const ModelResult* m = find(r, ModelKind::M);
  if (!m) return {Status::Fail, "majority run failed"};
  const double micro = m->metrics.micro.f1;
  const bool all_positive = m->confusion.col_sum(PolarityClass::Positive) == m->confusion.total();
  const bool ok = g_micro_violations == 0 && all_positive && std::abs(micro - 0.78) <= 0.005;
  return {ok ? Status::Pass : Status::Fail,
          "majority baseline micro " + fmt("%.4f", micro) + "; micro P=R=F1 on " + std::to_string(g_micro_checked) +
              " runs, " + std::to_string(g_micro_violations) + " violations"};
}

Outcome table_ordering() {
  SynthSpec spec;
  spec.class_sizes = {1170, 810, 7020};
  spec.signal = 0.7;
  spec.length_skew = 0.5;
  const SynthCorpus s = generate_synthetic(spec);
  ExperimentConfig cfg;
  cfg.models = {ModelKind::ES, ModelKind::S, ModelKind::E, ModelKind::ES_G};
  const ExperimentReport r = run_experiment(to_corpus(s), s.lexicon, cfg);
  note_report(r);
  const ModelResult* es = find(r, ModelKind::ES);
  const ModelResult* se = find(r, ModelKind::S);
  const ModelResult* em = find(r, ModelKind::E);
  const ModelResult* g = find(r, ModelKind::ES_G);
  if (!es || !se || !em || !g) return {Status::Fail, "a model failed to run"};
  auto f1 = [](const ModelResult* m) { return m->metrics.micro.f1; };
  auto margin = [](const ModelResult* a, const ModelResult* b) {
    return std::hypot(a->fold_standard_error(), b->fold_standard_error());
  };
  const bool es_s = f1(es) - f1(se) > margin(es, se);
  const bool s_e = f1(se) - f1(em) > margin(se, em);
  const bool g_es = f1(g) - f1(es) > margin(g, es);
  std::string detail = "ES+G " + fmt("%.4f", f1(g)) + " > ES " + fmt("%.4f", f1(es)) + " > S " + fmt("%.4f", f1(se)) +
                       " > E " + fmt("%.4f", f1(em)) + "; margins " + fmt("%.4f", f1(es) - f1(se)) + "/" +
                       fmt("%.4f", margin(es, se)) + ", " + fmt("%.4f", f1(se) - f1(em)) + "/" +
                       fmt("%.4f", margin(se, em)) + ", " + fmt("%.4f", f1(g) - f1(es)) + "/" +
                       fmt("%.4f", margin(g, es));
  return {es_s && s_e && g_es ? Status::Pass : Status::Fail, detail};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("emobow-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream log;
  app::SynthOptions so;
  so.spec.class_sizes = {150, 100, 250};
  so.output = (dir / "corpus.jsonl").string();
  so.lexicon_output = (dir / "lexicon.tsv").string();
  if (app::cmd_synth(so, log) != app::kOk) return {Status::Fail, "synth failed"};

  app::EvaluateOptions eo;
  eo.config.corpus_path = so.output;
  eo.config.lexicon_path = so.lexicon_output;
  eo.config.forest.n_trees = 30;
  const int saved = omp_get_max_threads();
  std::vector<std::string> csvs;
  for (int threads : {1, 4, 4}) {
    omp_set_num_threads(threads);
    eo.output_prefix = (dir / ("run" + std::to_string(csvs.size()))).string();
    const int rc = app::cmd_evaluate(eo, log);
    std::ifstream in(eo.output_prefix + ".csv", std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    csvs.push_back(rc == app::kOk ? s.str() : std::string());
  }
  omp_set_num_threads(saved);
  fs::remove_all(dir);
  const bool ok = !csvs[0].empty() && csvs[0] == csvs[1] && csvs[1] == csvs[2];
  return {ok ? Status::Pass : Status::Fail,
          "11 models, threads 1/4/4: CSV reports " + std::string(ok ? "byte-identical" : "differ")};
}

Outcome lexicon_scale() {
  const char* path = std::getenv("EMOBOW_NRC_LEXICON");
  if (!path || !*path) return {Status::Skip, "EMOBOW_NRC_LEXICON not set; NRC file not provided"};
  const Lexicon lex = load_lexicon(path);
  return {lex.size() == 13668 ? Status::Pass : Status::Fail,
          std::to_string(lex.size()) + " affect-bearing words (expected 13668)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"transform golden outputs", golden_transforms},
      {"transform algebra", transform_algebra},
      {"sampling regimes", sampling},
      {"entropy and split gain", entropy_and_gain},
      {"forest on planted signal", forest_sanity},
      {"metric identities", metric_identities},
      {"representation ordering", table_ordering},
      {"determinism across threads", determinism},
      {"lexicon scale", lexicon_scale},
  };
  // The identity check reads the runs of the two experiment criteria that
  // precede it, so it runs after them.
  const std::vector<std::size_t> order = {0, 1, 2, 3, 4, 6, 5, 7, 8};
  std::vector<Outcome> outcomes(criteria.size());
  std::vector<double> seconds(criteria.size());
  bool failed = false;
  for (std::size_t i : order) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      outcomes[i] = criteria[i].second();
    } catch (const std::exception& e) {
      outcomes[i] = {Status::Fail, std::string("exception: ") + e.what()};
    }
    seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed |= outcomes[i].status == Status::Fail;
  }
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const char* tag = outcomes[i].status == Status::Pass ? "PASS" : outcomes[i].status == Status::Fail ? "FAIL" : "SKIP";
    std::printf("[%s] %zu %-28s %s (%.2f s)\n", tag, i + 1, criteria[i].first, outcomes[i].detail.c_str(), seconds[i]);
  }
  return failed ? 1 : 0;
}
