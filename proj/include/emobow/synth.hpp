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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "emobow/corpus_io.hpp"
#include "emobow/lexicon.hpp"

namespace emobow {

// Planted-signal corpus generator.
//
// Every class owns `cue_words` lexicon words of each of three kinds:
// sentiment-only, emotion-only and both. A document of class y carries
// between min_cues and max_cues cue tokens. Each cue token comes from
// class y's cues with probability `signal` and from a uniformly drawn
// class's cues otherwise, so signal 1 makes the label a function of the cue
// words and signal 0 makes it independent of the text. Cue kinds are drawn
// with the given probabilities independently of the class.
//
// The rest of the document is filler (non-lexicon words, Zipf-distributed)
// and a few class-free affect words. With length_skew > 0 the filler count
// grows with negativity: x1 for positive, x(1 + skew/2) neutral,
// x(1 + skew) negative.
struct SynthSpec {
  ClassCounts class_sizes{300, 300, 300};
  std::size_t filler_vocab = 400;
  std::size_t cue_words = 12;
  std::size_t noise_affect_words = 30;
  double signal = 1.0;
  std::size_t min_cues = 2;
  std::size_t max_cues = 5;
  double p_sentiment_only = 0.45;
  double p_emotion_only = 0.20;
  std::size_t min_filler = 15;
  std::size_t max_filler = 30;
  std::size_t max_noise_affect = 2;
  double length_skew = 0.0;
  std::uint64_t seed = 7;

  void validate() const;  // Error("InvalidArgument")
};

struct SynthCorpus {
  std::vector<CorpusRecord> records;
  Lexicon lexicon;
};

SynthCorpus generate_synthetic(const SynthSpec& spec);

// Accuracy of the Bayes-optimal classifier that sees the cue tokens, under
// the class priors of `spec.class_sizes`. Exact enumeration over cue
// counts; ignores the length signal.
double bayes_accuracy(const SynthSpec& spec);

// Cue class a cue word belongs to, if it is one.
std::optional<PolarityClass> cue_class_of(std::string_view word);

}  // namespace emobow
