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

// Parallel sparse kernels against the serial dense reference.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <numeric>
#include <vector>

#include "emobow/evaluate.hpp"
#include "emobow/features.hpp"
#include "emobow/forest.hpp"
#include "emobow/represent.hpp"
#include "emobow/synth.hpp"

namespace {

using namespace emobow;

struct Data {
  SparseMatrix X;
  std::vector<PolarityClass> y;
  std::vector<std::uint32_t> rows;
};

// A synthetic review set under model M, vectorized over its full vocabulary.
const Data& data(std::size_t n_docs) {
  static std::map<std::size_t, Data> cache;
  auto it = cache.find(n_docs);
  if (it != cache.end()) return it->second;
  SynthSpec spec;
  spec.class_sizes = {n_docs / 3, n_docs / 3, n_docs - 2 * (n_docs / 3)};
  spec.filler_vocab = 2000;
  const SynthCorpus s = generate_synthetic(spec);
  std::vector<TokenSeq> docs;
  Data d;
  for (const auto& r : s.records) {
    docs.push_back(normalize(r.text));
    d.y.push_back(r.label);
  }
  const Vocabulary vocab = build_vocabulary(docs, 2);
  std::vector<std::size_t> all(docs.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  d.X = vectorize_all(docs, all, vocab);
  d.rows.resize(docs.size());
  std::iota(d.rows.begin(), d.rows.end(), 0u);
  return cache.emplace(n_docs, std::move(d)).first->second;
}

ForestParams params() {
  ForestParams p;
  p.n_trees = 16;
  p.seed = 1;
  return p;
}

void BM_TrainForestParallel(benchmark::State& state) {
  const Data& d = data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(train_forest(d.X, d.y, d.rows, params()));
  state.SetItemsProcessed(state.iterations() * params().n_trees);
}

void BM_TrainForestSparseOneThread(benchmark::State& state) {
  const Data& d = data(static_cast<std::size_t>(state.range(0)));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  for (auto _ : state) benchmark::DoNotOptimize(train_forest(d.X, d.y, d.rows, params()));
  omp_set_num_threads(saved);
  state.SetItemsProcessed(state.iterations() * params().n_trees);
}

void BM_TrainForestSerialDense(benchmark::State& state) {
  const Data& d = data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::train_forest_serial(d.X, d.y, d.rows, params()));
  state.SetItemsProcessed(state.iterations() * params().n_trees);
}

void BM_BestSplitSparse(benchmark::State& state) {
  const Data& d = data(static_cast<std::size_t>(state.range(0)));
  std::vector<std::uint32_t> cand(d.X.dimension());
  std::iota(cand.begin(), cand.end(), 0u);
  for (auto _ : state) benchmark::DoNotOptimize(best_split(d.X, d.y, cand));
}

void BM_BestSplitDense(benchmark::State& state) {
  const Data& d = data(static_cast<std::size_t>(state.range(0)));
  std::vector<std::uint32_t> cand(d.X.dimension());
  std::iota(cand.begin(), cand.end(), 0u);
  for (auto _ : state) benchmark::DoNotOptimize(reference::best_split_dense(d.X, d.y, cand));
}

void BM_VocabularyParallel(benchmark::State& state) {
  SynthSpec spec;
  spec.class_sizes = {2000, 2000, 2000};
  spec.filler_vocab = 5000;
  const SynthCorpus s = generate_synthetic(spec);
  std::vector<TokenSeq> docs;
  for (const auto& r : s.records) docs.push_back(normalize(r.text));
  std::vector<std::size_t> all(docs.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const bool serial = state.range(0) == 0;
  for (auto _ : state) {
    if (serial) {
      benchmark::DoNotOptimize(reference::build_vocabulary_serial(docs, all, 2));
    } else {
      benchmark::DoNotOptimize(build_vocabulary(docs, all, 2));
    }
  }
  state.SetLabel(serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_TrainForestParallel)->Arg(300)->Arg(1200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrainForestSparseOneThread)->Arg(300)->Arg(1200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrainForestSerialDense)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BestSplitSparse)->Arg(300)->Arg(1200)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BestSplitDense)->Arg(300)->Arg(1200)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_VocabularyParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
