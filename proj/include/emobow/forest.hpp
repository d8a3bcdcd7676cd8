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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "emobow/features.hpp"
#include "emobow/types.hpp"

namespace emobow {

// Per-class sample weights. Bootstrap multiplicities are whole numbers, so
// sums stay exact in double precision.
using ClassWeights = std::array<double, kNumClasses>;

// Shannon entropy in bits. Throws Error("EmptyNode") when the total is 0.
double entropy(const ClassWeights& counts);
double entropy(const ClassCounts& counts);

// H(parent) - sum_i (n_i / n) H(child_i) for a binary split.
double information_gain(const ClassWeights& parent, const ClassWeights& left,
                        const ClassWeights& right);

// Number of candidate features drawn at each node.
struct FeaturesPerSplit {
  enum class Rule : std::uint8_t { Sqrt, All, Fixed };
  Rule rule = Rule::Sqrt;
  std::size_t k = 0;  // Fixed only

  std::size_t resolve(std::size_t dimension) const noexcept;
};

struct ForestParams {
  std::size_t n_trees = 100;
  std::optional<std::size_t> max_depth;  // unbounded when absent
  std::size_t min_samples_split = 2;
  std::size_t min_samples_leaf = 1;
  FeaturesPerSplit features_per_split;
  bool bootstrap = true;
  std::uint64_t seed = 0;

  // Throws Error("InvalidArgument").
  void validate() const;
};

// Rows with `count(feature) <= threshold` go left.
struct Split {
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

// Splits whose gain does not exceed this are treated as no split.
inline constexpr double kMinGain = 1e-12;

struct TreeNode {
  static constexpr std::int32_t kLeaf = -1;

  std::int32_t feature = kLeaf;
  double threshold = 0.0;
  double gain = 0.0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  ClassWeights counts{};  // training weight per class reaching this node

  bool is_leaf() const noexcept { return feature == kLeaf; }
};

// Majority class of a weight vector; ties go to the lower class.
PolarityClass majority_class(const ClassWeights& counts) noexcept;

class Tree {
 public:
  Tree() = default;
  explicit Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t depth() const;
  std::size_t leaf_count() const;

  const TreeNode& leaf_for(RowView x) const;
  PolarityClass predict(RowView x) const { return majority_class(leaf_for(x).counts); }

  bool operator==(const Tree&) const;

 private:
  std::vector<TreeNode> nodes_;
};

class Forest {
 public:
  Forest() = default;
  Forest(std::vector<Tree> trees, ForestParams params, std::size_t dimension)
      : trees_(std::move(trees)), params_(params), dimension_(dimension) {}

  const std::vector<Tree>& trees() const noexcept { return trees_; }
  const ForestParams& params() const noexcept { return params_; }
  std::size_t dimension() const noexcept { return dimension_; }

  // Modal tree vote; ties go to the lower class. Throws
  // Error("DimensionMismatch") when `x` was built on another vocabulary.
  PolarityClass predict(const CountVector& x) const;
  PolarityClass predict(RowView x) const;
  ClassWeights predict_distribution(RowView x) const;  // vote shares
  std::vector<PolarityClass> predict_all(const SparseMatrix& X) const;  // parallel

  // Mean over trees of the node-weighted gain accumulated per feature,
  // normalised to sum to 1.
  std::vector<double> feature_importance() const;

  bool operator==(const Forest&) const;

 private:
  std::vector<Tree> trees_;
  ForestParams params_;
  std::size_t dimension_ = 0;
};

// Best (feature, threshold) over `candidate_features` using all rows of X with
// unit weight. Thresholds are midpoints between consecutive distinct counts;
// ties go to the lower feature, then the lower threshold.
std::optional<Split> best_split(const SparseMatrix& X, std::span<const PolarityClass> y,
                                std::span<const std::uint32_t> candidate_features,
                                std::size_t min_samples_leaf = 1);

// Grows one tree on rows `rows` of X with the matching `weights`
// (multiplicities). Nodes are expanded depth first, left before right.
Tree grow_tree(const SparseMatrix& X, std::span<const PolarityClass> y,
               std::span<const std::uint32_t> rows, std::span<const double> weights,
               const ForestParams& params, std::mt19937_64& rng);

// Trains params.n_trees trees in parallel. Tree t uses an engine seeded with
// params.seed + t and, with bootstrap, a resample of |sample| draws from
// `sample` (row indices of X, duplicates allowed). Results do not depend on
// the number of threads. Throws Error("DimensionMismatch") when |y| != rows.
Forest train_forest(const SparseMatrix& X, std::span<const PolarityClass> y,
                    std::span<const std::uint32_t> sample, const ForestParams& params);
Forest train_forest(const SparseMatrix& X, std::span<const PolarityClass> y,
                    const ForestParams& params);

namespace reference {

// Dense brute-force split search: every (feature, threshold) pair is scored
// by rescanning all rows.
std::optional<Split> best_split_dense(const SparseMatrix& X, std::span<const PolarityClass> y,
                                      std::span<const std::uint32_t> candidate_features,
                                      std::size_t min_samples_leaf = 1);

Tree grow_tree_dense(const SparseMatrix& X, std::span<const PolarityClass> y,
                     std::span<const std::uint32_t> rows, std::span<const double> weights,
                     const ForestParams& params, std::mt19937_64& rng);

// Same contract as emobow::train_forest, one tree after another, using the
// dense split search. Only practical on small inputs.
Forest train_forest_serial(const SparseMatrix& X, std::span<const PolarityClass> y,
                           std::span<const std::uint32_t> sample, const ForestParams& params);

}  // namespace reference

// Versioned JSON model file.
nlohmann::json forest_to_json(const Forest& forest);
Forest forest_from_json(const nlohmann::json& j);  // Error("ModelFormat")
void save_forest(std::ostream& out, const Forest& forest);
Forest load_forest(std::istream& in);

}  // namespace emobow
