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

// Tree growth shared by the sparse split search and the dense reference.
// Both finders see the same nodes in the same order and draw candidate
// features from the same engine calls, so on equal inputs they must grow
// identical trees.

#include <algorithm>
#include <random>
#include <span>
#include <vector>

#include "emobow/forest.hpp"

namespace emobow::detail {

inline ClassWeights class_weights(std::span<const PolarityClass> y,
                                  std::span<const std::uint32_t> rows,
                                  std::span<const double> weights) {
  ClassWeights c{};
  for (std::size_t i = 0; i < rows.size(); ++i) c[index_of(y[rows[i]])] += weights[i];
  return c;
}

inline double total_weight(const ClassWeights& c) { return c[0] + c[1] + c[2]; }

// Uniform k-subset of `pool` (partial Fisher-Yates), returned ascending.
inline std::vector<std::uint32_t> draw_candidates(std::vector<std::uint32_t> pool, std::size_t k,
                                                  std::mt19937_64& rng) {
  if (k < pool.size()) {
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
  }
  return pool;
}

struct WeightedRows {
  std::vector<std::uint32_t> rows;  // ascending, unique
  std::vector<double> weights;      // multiplicity of each row
};

// Bootstrap resample of `sample` (|sample| draws with replacement), or the
// multiplicities of `sample` itself when bootstrap is off.
inline WeightedRows draw_sample(std::span<const std::uint32_t> sample, std::size_t n_rows,
                                bool bootstrap, std::mt19937_64& rng) {
  std::vector<double> mult(n_rows, 0.0);
  if (bootstrap) {
    std::uniform_int_distribution<std::size_t> pick(0, sample.size() - 1);
    for (std::size_t i = 0; i < sample.size(); ++i) mult[sample[pick(rng)]] += 1.0;
  } else {
    for (std::uint32_t r : sample) mult[r] += 1.0;
  }
  WeightedRows out;
  for (std::uint32_t r = 0; r < n_rows; ++r) {
    if (mult[r] > 0.0) {
      out.rows.push_back(r);
      out.weights.push_back(mult[r]);
    }
  }
  return out;
}

// Finder concept:
//   void load(rows, weights, totals);
//   const std::vector<std::uint32_t>& nonconstant() const;   // ascending
//   std::optional<Split> best(std::span<const std::uint32_t> candidates);
template <class Finder>
Tree grow(const SparseMatrix& X, std::span<const PolarityClass> y,
          std::span<const std::uint32_t> rows, std::span<const double> weights,
          const ForestParams& params, std::mt19937_64& rng, Finder& finder) {
  struct Task {
    std::uint32_t node;
    std::vector<std::uint32_t> rows;
    std::vector<double> weights;
    std::size_t depth;
  };

  const std::size_t k_features = params.features_per_split.resolve(X.dimension());
  const auto min_split = static_cast<double>(params.min_samples_split);
  const auto min_leaf = static_cast<double>(params.min_samples_leaf);

  std::vector<TreeNode> nodes(1);
  std::vector<Task> stack;
  stack.push_back({0, {rows.begin(), rows.end()}, {weights.begin(), weights.end()}, 0});

  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();

    const ClassWeights counts = class_weights(y, task.rows, task.weights);
    nodes[task.node].counts = counts;
    const double total = total_weight(counts);
    const auto classes_present = std::count_if(counts.begin(), counts.end(),
                                               [](double w) { return w > 0.0; });
    if (classes_present <= 1) continue;
    if (params.max_depth && task.depth >= *params.max_depth) continue;
    if (total < min_split || total < 2.0 * min_leaf) continue;

    finder.load(task.rows, task.weights, counts);
    const std::vector<std::uint32_t>& pool = finder.nonconstant();
    if (pool.empty()) continue;
    const auto candidates = draw_candidates(pool, std::min(k_features, pool.size()), rng);
    const std::optional<Split> split = finder.best(candidates);
    if (!split) continue;

    Task left{0, {}, {}, task.depth + 1};
    Task right{0, {}, {}, task.depth + 1};
    for (std::size_t i = 0; i < task.rows.size(); ++i) {
      const std::uint32_t r = task.rows[i];
      Task& side = X.row(r).value(split->feature) <= split->threshold ? left : right;
      side.rows.push_back(r);
      side.weights.push_back(task.weights[i]);
    }

    left.node = static_cast<std::uint32_t>(nodes.size());
    right.node = left.node + 1;
    nodes.resize(nodes.size() + 2);
    TreeNode& n = nodes[task.node];
    n.feature = static_cast<std::int32_t>(split->feature);
    n.threshold = split->threshold;
    n.gain = split->gain;
    n.left = left.node;
    n.right = right.node;

    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  return Tree(std::move(nodes));
}

}  // namespace emobow::detail
