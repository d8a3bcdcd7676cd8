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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace emobow {

// Base of every error the library raises. `kind()` is the stable
// machine-readable name (e.g. "EmptyVocabulary") used in reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Three-way review polarity. The numeric order is the reporting order and
// the tie-break order used by the forest vote.
enum class PolarityClass : std::uint8_t { Negative = 0, Neutral = 1, Positive = 2 };

inline constexpr std::size_t kNumClasses = 3;
inline constexpr std::array<PolarityClass, kNumClasses> kAllClasses = {
    PolarityClass::Negative, PolarityClass::Neutral, PolarityClass::Positive};

using ClassCounts = std::array<std::size_t, kNumClasses>;

constexpr std::size_t index_of(PolarityClass c) noexcept {
  return static_cast<std::size_t>(c);
}

std::string_view to_string(PolarityClass c) noexcept;
std::optional<PolarityClass> parse_polarity(std::string_view name) noexcept;

// Named random streams derived from the single user seed. Every consumer
// (folds, resampling, forest) asks for its own stream so that changing one
// component does not shift the randomness of another.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index = 0) noexcept;

}  // namespace emobow
