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

#include "emobow/balance.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace emobow {

namespace {

std::array<std::vector<std::size_t>, kNumClasses> by_class(std::span<const PolarityClass> labels) {
  std::array<std::vector<std::size_t>, kNumClasses> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[index_of(labels[i])].push_back(i);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (groups[c].empty()) {
      throw Error("EmptyClass", "class '" + std::string(to_string(kAllClasses[c])) +
                                    "' has no member; cannot rebalance");
    }
  }
  return groups;
}

}  // namespace

std::string_view to_string(SamplingRegime r) noexcept {
  switch (r) {
    case SamplingRegime::Natural:
      return "natural";
    case SamplingRegime::Undersample:
      return "under";
    case SamplingRegime::Oversample:
      return "over";
  }
  return "?";
}

std::optional<SamplingRegime> parse_sampling_regime(std::string_view s) noexcept {
  for (auto r : {SamplingRegime::Natural, SamplingRegime::Undersample, SamplingRegime::Oversample}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::string_view to_string(ResampleScope s) noexcept {
  return s == ResampleScope::Global ? "global" : "per-fold";
}

std::optional<ResampleScope> parse_resample_scope(std::string_view s) noexcept {
  if (s == "global") return ResampleScope::Global;
  if (s == "per-fold") return ResampleScope::PerFold;
  return std::nullopt;
}

std::vector<std::size_t> undersample_indices(std::span<const PolarityClass> labels,
                                             std::uint64_t seed) {
  auto groups = by_class(labels);
  std::size_t target = groups[0].size();
  for (const auto& g : groups) target = std::min(target, g.size());

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> out;
  out.reserve(target * kNumClasses);
  for (auto& g : groups) {
    if (g.size() > target) {
      std::shuffle(g.begin(), g.end(), rng);
      g.resize(target);
    }
    out.insert(out.end(), g.begin(), g.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> oversample_indices(std::span<const PolarityClass> labels,
                                            std::uint64_t seed) {
  auto groups = by_class(labels);
  std::size_t target = 0;
  for (const auto& g : groups) target = std::max(target, g.size());

  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  out.reserve(target * kNumClasses);

  std::mt19937_64 rng(seed);
  for (auto& g : groups) {
    if (g.size() == target) continue;
    std::shuffle(g.begin(), g.end(), rng);
    for (std::size_t k = 0, need = target - g.size(); k < need; ++k) out.push_back(g[k % g.size()]);
  }
  return out;
}

std::vector<std::size_t> resample_indices(std::span<const PolarityClass> labels,
                                          SamplingRegime regime, std::uint64_t seed) {
  switch (regime) {
    case SamplingRegime::Undersample:
      return undersample_indices(labels, seed);
    case SamplingRegime::Oversample:
      return oversample_indices(labels, seed);
    case SamplingRegime::Natural:
      break;
  }
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

LabeledSet undersample(const LabeledSet& ds, std::uint64_t seed) {
  const auto labels = ds.labels();
  return ds.select(undersample_indices(labels, seed));
}

LabeledSet oversample(const LabeledSet& ds, std::uint64_t seed) {
  const auto labels = ds.labels();
  return ds.select(oversample_indices(labels, seed));
}

}  // namespace emobow
