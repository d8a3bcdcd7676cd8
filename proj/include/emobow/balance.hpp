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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "emobow/corpus.hpp"
#include "emobow/types.hpp"

namespace emobow {

enum class SamplingRegime : std::uint8_t { Natural, Undersample, Oversample };

// Where resampling happens relative to cross-validation. Global resamples
// the whole set before folding, so copies of a review can land in both the
// training and the test side.
enum class ResampleScope : std::uint8_t { Global, PerFold };

std::string_view to_string(SamplingRegime r) noexcept;  // natural, under, over
std::optional<SamplingRegime> parse_sampling_regime(std::string_view s) noexcept;
std::string_view to_string(ResampleScope s) noexcept;   // global, per-fold
std::optional<ResampleScope> parse_resample_scope(std::string_view s) noexcept;

// Index-level resampling: the returned positions refer into `labels`.
//
// undersample: every class cut down to the smallest class size; survivors
//   are chosen uniformly under `seed` and returned in ascending order.
// oversample: every index once in ascending order, followed by copies of
//   minority-class indices. Each minority class is shuffled under `seed` and
//   cycled through until it reaches the largest class size.
//
// Both throw Error("EmptyClass") when a class has no member.
std::vector<std::size_t> undersample_indices(std::span<const PolarityClass> labels,
                                             std::uint64_t seed);
std::vector<std::size_t> oversample_indices(std::span<const PolarityClass> labels,
                                            std::uint64_t seed);
std::vector<std::size_t> resample_indices(std::span<const PolarityClass> labels,
                                          SamplingRegime regime, std::uint64_t seed);

LabeledSet undersample(const LabeledSet& ds, std::uint64_t seed);
LabeledSet oversample(const LabeledSet& ds, std::uint64_t seed);

}  // namespace emobow
