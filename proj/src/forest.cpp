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

#include "emobow/forest.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "tree_builder.hpp"

namespace emobow {

namespace {

// Sparse split search. A node's nonzero entries are bucketed per feature in
// one pass over its rows; zero counts are never materialised and enter the
// scan as a single aggregate group at value 0.
class SparseFinder {
 public:
  SparseFinder(const SparseMatrix& X, std::span<const PolarityClass> y, std::size_t min_leaf)
      : X_(X), y_(y), min_leaf_(static_cast<double>(min_leaf)),
        count_(X.dimension(), 0), start_(X.dimension(), 0), pos_(X.dimension(), 0) {}

  void load(std::span<const std::uint32_t> rows, std::span<const double> weights,
            const ClassWeights& totals) {
    for (std::uint32_t f : touched_) count_[f] = 0;
    touched_.clear();
    totals_ = totals;
    total_ = detail::total_weight(totals);

    for (std::uint32_t r : rows) {
      for (const FeatureCount& e : X_.row(r).entries) {
        if (count_[e.feature]++ == 0) touched_.push_back(e.feature);
      }
    }
    std::sort(touched_.begin(), touched_.end());

    std::uint32_t pos = 0;
    for (std::uint32_t f : touched_) {
      start_[f] = pos;
      pos += count_[f];
    }
    entries_.resize(pos);
    cursor_.resize(touched_.size());
    for (std::size_t i = 0; i < touched_.size(); ++i) {
      pos_[touched_[i]] = static_cast<std::uint32_t>(i);
      cursor_[i] = start_[touched_[i]];
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto cls = static_cast<std::uint8_t>(index_of(y_[rows[i]]));
      for (const FeatureCount& e : X_.row(rows[i]).entries) {
        entries_[cursor_[pos_[e.feature]]++] = {e.count, cls, weights[i]};
      }
    }

    nonconstant_.clear();
    for (std::uint32_t f : touched_) {
      const auto span = feature_entries(f);
      double nz = 0.0;
      bool varies = false;
      for (const Entry& e : span) {
        nz += e.weight;
        varies = varies || e.value != span.front().value;
      }
      if (varies || total_ - nz > 0.5) nonconstant_.push_back(f);
    }
  }

  const std::vector<std::uint32_t>& nonconstant() const { return nonconstant_; }

  std::optional<Split> best(std::span<const std::uint32_t> candidates) {
    std::optional<Split> best;
    double best_gain = kMinGain;
    for (std::uint32_t f : candidates) {
      const auto span = feature_entries(f);
      scratch_.assign(span.begin(), span.end());
      std::sort(scratch_.begin(), scratch_.end(),
                [](const Entry& a, const Entry& b) { return a.value < b.value; });

      ClassWeights left = totals_;
      for (const Entry& e : scratch_) left[e.cls] -= e.weight;
      bool have_prev = detail::total_weight(left) > 0.5;
      std::uint32_t prev = 0;

      for (std::size_t i = 0; i < scratch_.size();) {
        const std::uint32_t v = scratch_[i].value;
        if (have_prev) {
          const double threshold = (static_cast<double>(prev) + static_cast<double>(v)) / 2.0;
          ClassWeights right;
          for (std::size_t c = 0; c < kNumClasses; ++c) right[c] = totals_[c] - left[c];
          const double wl = detail::total_weight(left);
          const double wr = detail::total_weight(right);
          if (wl >= min_leaf_ && wr >= min_leaf_) {
            const double gain = information_gain(totals_, left, right);
            if (gain > best_gain) {
              best_gain = gain;
              best = Split{f, threshold, gain};
            }
          }
        }
        for (; i < scratch_.size() && scratch_[i].value == v; ++i) left[scratch_[i].cls] += scratch_[i].weight;
        prev = v;
        have_prev = true;
      }
    }
    return best;
  }

 private:
  struct Entry {
    std::uint32_t value;
    std::uint8_t cls;
    double weight;
  };

  std::span<const Entry> feature_entries(std::uint32_t f) const {
    return std::span<const Entry>(entries_).subspan(start_[f], count_[f]);
  }

  const SparseMatrix& X_;
  std::span<const PolarityClass> y_;
  double min_leaf_;

  std::vector<std::uint32_t> count_;  // entries per feature in the loaded node
  std::vector<std::uint32_t> start_;  // offset of each feature's bucket
  std::vector<std::uint32_t> pos_;    // feature -> index in touched_
  std::vector<std::uint32_t> cursor_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> nonconstant_;
  std::vector<Entry> entries_;
  std::vector<Entry> scratch_;
  ClassWeights totals_{};
  double total_ = 0.0;
};

void check_inputs(const SparseMatrix& X, std::span<const PolarityClass> y,
                  std::span<const std::uint32_t> sample, const ForestParams& params) {
  params.validate();
  if (y.size() != X.rows()) {
    throw Error("DimensionMismatch", std::to_string(X.rows()) + " rows but " +
                                         std::to_string(y.size()) + " labels");
  }
  if (sample.empty()) throw Error("InvalidArgument", "cannot train on an empty sample");
  for (std::uint32_t r : sample) {
    if (r >= X.rows()) throw Error("InvalidArgument", "sample row out of range");
  }
}

std::vector<std::uint32_t> all_rows(std::size_t n) {
  std::vector<std::uint32_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0u);
  return rows;
}

}  // namespace

double entropy(const ClassWeights& counts) {
  const double total = detail::total_weight(counts);
  if (!(total > 0.0)) throw Error("EmptyNode", "entropy of an empty node");
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double entropy(const ClassCounts& counts) {
  return entropy(ClassWeights{static_cast<double>(counts[0]), static_cast<double>(counts[1]),
                              static_cast<double>(counts[2])});
}

double information_gain(const ClassWeights& parent, const ClassWeights& left,
                        const ClassWeights& right) {
  const double n = detail::total_weight(parent);
  const double nl = detail::total_weight(left);
  const double nr = detail::total_weight(right);
  double children = 0.0;
  if (nl > 0.0) children += (nl / n) * entropy(left);
  if (nr > 0.0) children += (nr / n) * entropy(right);
  return entropy(parent) - children;
}

std::size_t FeaturesPerSplit::resolve(std::size_t dimension) const noexcept {
  std::size_t k = dimension;
  switch (rule) {
    case Rule::Sqrt:
      k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(dimension))));
      break;
    case Rule::All:
      break;
    case Rule::Fixed:
      k = std::min(this->k, dimension);
      break;
  }
  return std::max<std::size_t>(k, 1);
}

void ForestParams::validate() const {
  if (n_trees < 1) throw Error("InvalidArgument", "n_trees must be >= 1");
  if (min_samples_split < 2) throw Error("InvalidArgument", "min_samples_split must be >= 2");
  if (min_samples_leaf < 1) throw Error("InvalidArgument", "min_samples_leaf must be >= 1");
  if (features_per_split.rule == FeaturesPerSplit::Rule::Fixed && features_per_split.k < 1) {
    throw Error("InvalidArgument", "fixed features_per_split must be >= 1");
  }
}

PolarityClass majority_class(const ClassWeights& counts) noexcept {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return kAllClasses[best];
}

std::size_t Tree::depth() const {
  if (nodes_.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes_[i].is_leaf()) {
      stack.push_back({nodes_[i].left, d + 1});
      stack.push_back({nodes_[i].right, d + 1});
    }
  }
  return deepest;
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

const TreeNode& Tree::leaf_for(RowView x) const {
  std::uint32_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& n = nodes_[i];
    i = x.value(static_cast<std::uint32_t>(n.feature)) <= n.threshold ? n.left : n.right;
  }
  return nodes_[i];
}

bool Tree::operator==(const Tree& o) const {
  if (nodes_.size() != o.nodes_.size()) return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& a = nodes_[i];
    const TreeNode& b = o.nodes_[i];
    if (a.feature != b.feature || a.threshold != b.threshold || a.gain != b.gain ||
        a.left != b.left || a.right != b.right || a.counts != b.counts) {
      return false;
    }
  }
  return true;
}

PolarityClass Forest::predict(const CountVector& x) const {
  if (x.dimension != dimension_) {
    throw Error("DimensionMismatch", "vector dimension " + std::to_string(x.dimension) +
                                         " != forest dimension " + std::to_string(dimension_));
  }
  return predict(RowView{x.entries});
}

PolarityClass Forest::predict(RowView x) const {
  ClassWeights votes{};
  for (const Tree& t : trees_) votes[index_of(t.predict(x))] += 1.0;
  return majority_class(votes);
}

ClassWeights Forest::predict_distribution(RowView x) const {
  ClassWeights votes{};
  for (const Tree& t : trees_) votes[index_of(t.predict(x))] += 1.0;
  for (double& v : votes) v /= static_cast<double>(trees_.size());
  return votes;
}

std::vector<PolarityClass> Forest::predict_all(const SparseMatrix& X) const {
  if (X.dimension() != dimension_) {
    throw Error("DimensionMismatch", "matrix dimension " + std::to_string(X.dimension()) +
                                         " != forest dimension " + std::to_string(dimension_));
  }
  std::vector<PolarityClass> out(X.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(X.rows()); ++i) {
    out[static_cast<std::size_t>(i)] = predict(X.row(static_cast<std::size_t>(i)));
  }
  return out;
}

std::vector<double> Forest::feature_importance() const {
  std::vector<double> imp(dimension_, 0.0);
  for (const Tree& t : trees_) {
    const auto& nodes = t.nodes();
    const double root = detail::total_weight(nodes.front().counts);
    for (const TreeNode& n : nodes) {
      if (!n.is_leaf()) {
        imp[static_cast<std::size_t>(n.feature)] += detail::total_weight(n.counts) / root * n.gain;
      }
    }
  }
  const double sum = std::accumulate(imp.begin(), imp.end(), 0.0);
  if (sum > 0.0) {
    for (double& v : imp) v /= sum;
  }
  return imp;
}

bool Forest::operator==(const Forest& o) const {
  return dimension_ == o.dimension_ && trees_ == o.trees_;
}

std::optional<Split> best_split(const SparseMatrix& X, std::span<const PolarityClass> y,
                                std::span<const std::uint32_t> candidate_features,
                                std::size_t min_samples_leaf) {
  if (y.size() != X.rows()) throw Error("DimensionMismatch", "rows and labels differ in length");
  const auto rows = all_rows(X.rows());
  const std::vector<double> weights(rows.size(), 1.0);
  SparseFinder finder(X, y, min_samples_leaf);
  finder.load(rows, weights, detail::class_weights(y, rows, weights));
  std::vector<std::uint32_t> sorted(candidate_features.begin(), candidate_features.end());
  std::sort(sorted.begin(), sorted.end());
  return finder.best(sorted);
}

Tree grow_tree(const SparseMatrix& X, std::span<const PolarityClass> y,
               std::span<const std::uint32_t> rows, std::span<const double> weights,
               const ForestParams& params, std::mt19937_64& rng) {
  SparseFinder finder(X, y, params.min_samples_leaf);
  return detail::grow(X, y, rows, weights, params, rng, finder);
}

Forest train_forest(const SparseMatrix& X, std::span<const PolarityClass> y,
                    std::span<const std::uint32_t> sample, const ForestParams& params) {
  check_inputs(X, y, sample, params);
  std::vector<Tree> trees(params.n_trees);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(params.n_trees); ++t) {
    try {
      std::mt19937_64 rng(params.seed + static_cast<std::uint64_t>(t));
      const auto drawn = detail::draw_sample(sample, X.rows(), params.bootstrap, rng);
      SparseFinder finder(X, y, params.min_samples_leaf);
      trees[static_cast<std::size_t>(t)] =
          detail::grow(X, y, drawn.rows, drawn.weights, params, rng, finder);
    } catch (...) {
#pragma omp critical(emobow_forest_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return Forest(std::move(trees), params, X.dimension());
}

Forest train_forest(const SparseMatrix& X, std::span<const PolarityClass> y,
                    const ForestParams& params) {
  return train_forest(X, y, all_rows(X.rows()), params);
}

}  // namespace emobow
