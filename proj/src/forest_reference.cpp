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

#include <algorithm>
#include <numeric>
#include <set>

#include "emobow/forest.hpp"
#include "tree_builder.hpp"

namespace emobow::reference {

namespace {

// Materialises every (row, feature) value of the node and scores each
// threshold by a full rescan.
class DenseFinder {
 public:
  DenseFinder(const SparseMatrix& X, std::span<const PolarityClass> y, std::size_t min_leaf)
      : X_(X), y_(y), min_leaf_(static_cast<double>(min_leaf)) {}

  void load(std::span<const std::uint32_t> rows, std::span<const double> weights,
            const ClassWeights& totals) {
    rows_.assign(rows.begin(), rows.end());
    weights_.assign(weights.begin(), weights.end());
    totals_ = totals;
    const std::size_t dim = X_.dimension();
    values_.assign(rows_.size() * dim, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::uint32_t f = 0; f < dim; ++f) values_[i * dim + f] = X_.row(rows_[i]).value(f);
    }
    nonconstant_.clear();
    for (std::uint32_t f = 0; f < dim; ++f) {
      for (std::size_t i = 1; i < rows_.size(); ++i) {
        if (value(i, f) != value(0, f)) {
          nonconstant_.push_back(f);
          break;
        }
      }
    }
  }

  const std::vector<std::uint32_t>& nonconstant() const { return nonconstant_; }

  std::optional<Split> best(std::span<const std::uint32_t> candidates) const {
    std::optional<Split> best;
    for (std::uint32_t f : candidates) {
      std::set<std::uint32_t> distinct;
      for (std::size_t i = 0; i < rows_.size(); ++i) distinct.insert(value(i, f));
      for (auto hi = std::next(distinct.begin()); hi != distinct.end(); ++hi) {
        const double threshold = (static_cast<double>(*std::prev(hi)) + static_cast<double>(*hi)) / 2.0;
        ClassWeights left{};
        ClassWeights right{};
        for (std::size_t i = 0; i < rows_.size(); ++i) {
          ClassWeights& side = value(i, f) <= threshold ? left : right;
          side[index_of(y_[rows_[i]])] += weights_[i];
        }
        const double wl = left[0] + left[1] + left[2];
        const double wr = right[0] + right[1] + right[2];
        if (wl < min_leaf_ || wr < min_leaf_) continue;
        const double gain = information_gain(totals_, left, right);
        if (gain > kMinGain && (!best || gain > best->gain)) best = Split{f, threshold, gain};
      }
    }
    return best;
  }

 private:
  std::uint32_t value(std::size_t i, std::uint32_t f) const { return values_[i * X_.dimension() + f]; }

  const SparseMatrix& X_;
  std::span<const PolarityClass> y_;
  double min_leaf_;
  std::vector<std::uint32_t> rows_;
  std::vector<double> weights_;
  std::vector<std::uint32_t> values_;
  std::vector<std::uint32_t> nonconstant_;
  ClassWeights totals_{};
};

}  // namespace

std::optional<Split> best_split_dense(const SparseMatrix& X, std::span<const PolarityClass> y,
                                      std::span<const std::uint32_t> candidate_features,
                                      std::size_t min_samples_leaf) {
  std::vector<std::uint32_t> rows(X.rows());
  std::iota(rows.begin(), rows.end(), 0u);
  const std::vector<double> weights(rows.size(), 1.0);
  DenseFinder finder(X, y, min_samples_leaf);
  finder.load(rows, weights, detail::class_weights(y, rows, weights));
  std::vector<std::uint32_t> sorted(candidate_features.begin(), candidate_features.end());
  std::sort(sorted.begin(), sorted.end());
  return finder.best(sorted);
}

Tree grow_tree_dense(const SparseMatrix& X, std::span<const PolarityClass> y,
                     std::span<const std::uint32_t> rows, std::span<const double> weights,
                     const ForestParams& params, std::mt19937_64& rng) {
  DenseFinder finder(X, y, params.min_samples_leaf);
  return detail::grow(X, y, rows, weights, params, rng, finder);
}

Forest train_forest_serial(const SparseMatrix& X, std::span<const PolarityClass> y,
                           std::span<const std::uint32_t> sample, const ForestParams& params) {
  params.validate();
  if (y.size() != X.rows()) throw Error("DimensionMismatch", "rows and labels differ in length");
  if (sample.empty()) throw Error("InvalidArgument", "cannot train on an empty sample");
  std::vector<Tree> trees;
  trees.reserve(params.n_trees);
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    std::mt19937_64 rng(params.seed + t);
    const auto drawn = detail::draw_sample(sample, X.rows(), params.bootstrap, rng);
    trees.push_back(grow_tree_dense(X, y, drawn.rows, drawn.weights, params, rng));
  }
  return Forest(std::move(trees), params, X.dimension());
}

}  // namespace emobow::reference
