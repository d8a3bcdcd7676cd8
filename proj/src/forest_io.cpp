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

#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "emobow/forest.hpp"

namespace emobow {

namespace {

constexpr const char* kFormat = "emobow-forest";
constexpr int kVersion = 1;

using nlohmann::json;

std::string rule_name(FeaturesPerSplit::Rule r) {
  switch (r) {
    case FeaturesPerSplit::Rule::Sqrt:
      return "sqrt";
    case FeaturesPerSplit::Rule::All:
      return "all";
    case FeaturesPerSplit::Rule::Fixed:
      return "fixed";
  }
  return "sqrt";
}

FeaturesPerSplit::Rule parse_rule(const std::string& s) {
  if (s == "sqrt") return FeaturesPerSplit::Rule::Sqrt;
  if (s == "all") return FeaturesPerSplit::Rule::All;
  if (s == "fixed") return FeaturesPerSplit::Rule::Fixed;
  throw Error("ModelFormat", "unknown features_per_split rule '" + s + "'");
}

}  // namespace

nlohmann::json forest_to_json(const Forest& forest) {
  const ForestParams& p = forest.params();
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["dimension"] = forest.dimension();
  j["params"] = {{"n_trees", p.n_trees},
                 {"max_depth", p.max_depth ? json(*p.max_depth) : json(nullptr)},
                 {"min_samples_split", p.min_samples_split},
                 {"min_samples_leaf", p.min_samples_leaf},
                 {"features_per_split", rule_name(p.features_per_split.rule)},
                 {"features_per_split_k", p.features_per_split.k},
                 {"bootstrap", p.bootstrap},
                 {"seed", p.seed}};
  json trees = json::array();
  for (const Tree& t : forest.trees()) {
    json feature = json::array(), threshold = json::array(), gain = json::array();
    json left = json::array(), right = json::array(), counts = json::array();
    for (const TreeNode& n : t.nodes()) {
      feature.push_back(n.feature);
      threshold.push_back(n.threshold);
      gain.push_back(n.gain);
      left.push_back(n.left);
      right.push_back(n.right);
      counts.push_back(n.counts);
    }
    trees.push_back({{"feature", feature},
                     {"threshold", threshold},
                     {"gain", gain},
                     {"left", left},
                     {"right", right},
                     {"counts", counts}});
  }
  j["trees"] = std::move(trees);
  return j;
}

void save_forest(std::ostream& out, const Forest& forest) { out << forest_to_json(forest).dump() << '\n'; }

Forest load_forest(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("ModelFormat", std::string("malformed forest file: ") + e.what());
  }
  return forest_from_json(j);
}

Forest forest_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != kFormat) throw Error("ModelFormat", "not an emobow forest file");
    if (j.at("version") != kVersion) {
      throw Error("ModelFormat", "unsupported forest version " + j.at("version").dump());
    }
    const json& jp = j.at("params");
    ForestParams p;
    p.n_trees = jp.at("n_trees");
    if (!jp.at("max_depth").is_null()) p.max_depth = jp.at("max_depth").get<std::size_t>();
    p.min_samples_split = jp.at("min_samples_split");
    p.min_samples_leaf = jp.at("min_samples_leaf");
    p.features_per_split.rule = parse_rule(jp.at("features_per_split"));
    p.features_per_split.k = jp.at("features_per_split_k");
    p.bootstrap = jp.at("bootstrap");
    p.seed = jp.at("seed");

    const std::size_t dimension = j.at("dimension");
    std::vector<Tree> trees;
    for (const json& jt : j.at("trees")) {
      const std::size_t n = jt.at("feature").size();
      std::vector<TreeNode> nodes(n);
      for (std::size_t i = 0; i < n; ++i) {
        TreeNode& node = nodes[i];
        node.feature = jt["feature"][i];
        node.threshold = jt.at("threshold")[i];
        node.gain = jt.at("gain")[i];
        node.left = jt.at("left")[i];
        node.right = jt.at("right")[i];
        node.counts = jt.at("counts")[i].get<ClassWeights>();
        const bool bad_feature = !node.is_leaf() && static_cast<std::size_t>(node.feature) >= dimension;
        const bool bad_child = !node.is_leaf() && (node.left >= n || node.right >= n);
        if (node.feature < TreeNode::kLeaf || bad_feature || bad_child) {
          throw Error("ModelFormat", "inconsistent node " + std::to_string(i));
        }
      }
      if (nodes.empty()) throw Error("ModelFormat", "tree without nodes");
      trees.emplace_back(std::move(nodes));
    }
    return Forest(std::move(trees), p, dimension);
  } catch (const json::exception& e) {
    throw Error("ModelFormat", std::string("malformed forest file: ") + e.what());
  }
}

}  // namespace emobow
