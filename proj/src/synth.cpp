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

#include "emobow/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace emobow {

namespace {

constexpr std::array<std::string_view, kNumClasses> kClassStem = {"neg", "neu", "pos"};
enum class CueKind : std::uint8_t { SentimentOnly, EmotionOnly, Both };
constexpr std::array<std::string_view, 3> kKindStem = {"sent", "emo", "both"};

std::string numbered(std::string_view stem, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return std::string(stem) + buf;
}

std::string cue_word(std::size_t cls, CueKind kind, std::size_t i) {
  return numbered(std::string(kClassStem[cls]) + std::string(kKindStem[static_cast<std::size_t>(kind)]), i);
}

Category cue_sentiment(std::size_t cls, std::size_t i) {
  if (cls == index_of(PolarityClass::Negative)) return Category::Negative;
  if (cls == index_of(PolarityClass::Positive)) return Category::Positive;
  return i % 2 == 0 ? Category::Positive : Category::Negative;
}

Category cue_emotion(std::size_t cls, std::size_t i) {
  static constexpr std::array<Category, 4> kNeg = {Category::Anger, Category::Disgust,
                                                   Category::Fear, Category::Sadness};
  static constexpr std::array<Category, 3> kPos = {Category::Joy, Category::Trust,
                                                   Category::Anticipation};
  static constexpr std::array<Category, 2> kNeu = {Category::Surprise, Category::Anticipation};
  if (cls == index_of(PolarityClass::Negative)) return kNeg[i % kNeg.size()];
  if (cls == index_of(PolarityClass::Positive)) return kPos[i % kPos.size()];
  return kNeu[i % kNeu.size()];
}

CategorySet cue_categories(std::size_t cls, CueKind kind, std::size_t i) {
  switch (kind) {
    case CueKind::SentimentOnly:
      return CategorySet{cue_sentiment(cls, i)};
    case CueKind::EmotionOnly:
      return CategorySet{cue_emotion(cls, i)};
    case CueKind::Both:
      return CategorySet{cue_sentiment(cls, i), cue_emotion(cls, i)};
  }
  return {};
}

double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

void SynthSpec::validate() const {
  auto bad = [](const char* why) { throw Error("InvalidArgument", std::string("synth: ") + why); };
  if (!(signal >= 0.0 && signal <= 1.0)) bad("signal must lie in [0,1]");
  if (cue_words == 0 || filler_vocab == 0) bad("cue_words and filler_vocab must be positive");
  if (min_cues == 0 || min_cues > max_cues) bad("need 1 <= min_cues <= max_cues");
  if (min_filler > max_filler) bad("need min_filler <= max_filler");
  if (p_sentiment_only < 0 || p_emotion_only < 0 || p_sentiment_only + p_emotion_only > 1.0) {
    bad("cue kind probabilities must be non-negative and sum to at most 1");
  }
  if (length_skew < 0.0) bad("length_skew must be non-negative");
}

std::optional<PolarityClass> cue_class_of(std::string_view word) {
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (!word.starts_with(kClassStem[c])) continue;
    const std::string_view rest = word.substr(kClassStem[c].size());
    for (std::string_view kind : kKindStem) {
      if (rest.starts_with(kind) && rest.size() > kind.size()) return kAllClasses[c];
    }
  }
  return std::nullopt;
}

SynthCorpus generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  SynthCorpus out;

  for (std::size_t c = 0; c < kNumClasses; ++c) {
    for (CueKind kind : {CueKind::SentimentOnly, CueKind::EmotionOnly, CueKind::Both}) {
      for (std::size_t i = 0; i < spec.cue_words; ++i) {
        out.lexicon.assign(cue_word(c, kind, i), cue_categories(c, kind, i));
      }
    }
  }
  std::vector<std::string> noise_affect;
  std::uniform_int_distribution<std::size_t> any_category(0, kNumCategories - 1);
  for (std::size_t i = 0; i < spec.noise_affect_words; ++i) {
    std::string w = numbered("affect", i);
    CategorySet cs{kCategoryOrder[any_category(rng)]};
    cs.insert(kCategoryOrder[any_category(rng)]);
    out.lexicon.assign(w, cs);
    noise_affect.push_back(std::move(w));
  }
  std::vector<std::string> filler;
  std::vector<double> zipf;
  for (std::size_t i = 0; i < spec.filler_vocab; ++i) {
    filler.push_back(numbered("word", i));
    zipf.push_back(1.0 / static_cast<double>(i + 1));
  }

  std::vector<PolarityClass> labels;
  for (std::size_t c = 0; c < kNumClasses; ++c) labels.insert(labels.end(), spec.class_sizes[c], kAllClasses[c]);
  std::shuffle(labels.begin(), labels.end(), rng);

  std::uniform_int_distribution<std::size_t> n_cues(spec.min_cues, spec.max_cues);
  std::uniform_int_distribution<std::size_t> n_filler(spec.min_filler, spec.max_filler);
  std::uniform_int_distribution<std::size_t> n_noise(0, spec.max_noise_affect);
  std::uniform_int_distribution<std::size_t> pick_cue(0, spec.cue_words - 1);
  std::uniform_int_distribution<std::size_t> pick_class(0, kNumClasses - 1);
  std::uniform_int_distribution<std::size_t> pick_noise(0, noise_affect.empty() ? 0 : noise_affect.size() - 1);
  std::uniform_int_distribution<int> pick_half(0, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::discrete_distribution<std::size_t> pick_filler(zipf.begin(), zipf.end());

  for (PolarityClass y : labels) {
    const std::size_t yc = index_of(y);
    std::vector<std::string> tokens;

    for (std::size_t k = 0, n = n_cues(rng); k < n; ++k) {
      const std::size_t cls = unit(rng) < spec.signal ? yc : pick_class(rng);
      const double u = unit(rng);
      const CueKind kind = u < spec.p_sentiment_only ? CueKind::SentimentOnly
                           : u < spec.p_sentiment_only + spec.p_emotion_only ? CueKind::EmotionOnly
                                                                            : CueKind::Both;
      tokens.push_back(cue_word(cls, kind, pick_cue(rng)));
    }
    if (!noise_affect.empty()) {
      for (std::size_t k = 0, n = n_noise(rng); k < n; ++k) tokens.push_back(noise_affect[pick_noise(rng)]);
    }
    const double stretch = y == PolarityClass::Negative  ? 1.0 + spec.length_skew
                           : y == PolarityClass::Neutral ? 1.0 + spec.length_skew / 2.0
                                                         : 1.0;
    const auto n_fill = static_cast<std::size_t>(std::llround(static_cast<double>(n_filler(rng)) * stretch));
    for (std::size_t k = 0; k < n_fill; ++k) tokens.push_back(filler[pick_filler(rng)]);
    std::shuffle(tokens.begin(), tokens.end(), rng);

    CorpusRecord rec;
    rec.label = y;
    rec.rating = y == PolarityClass::Negative ? 1 + pick_half(rng)
                 : y == PolarityClass::Neutral ? 3
                                               : 4 + pick_half(rng);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) rec.text.push_back(' ');
      rec.text += tokens[i];
    }
    rec.text.push_back('.');
    out.records.push_back(std::move(rec));
  }
  return out;
}

double bayes_accuracy(const SynthSpec& spec) {
  spec.validate();
  double total = 0.0;
  for (std::size_t c : spec.class_sizes) total += static_cast<double>(c);
  if (total == 0.0) return 0.0;
  std::array<double, kNumClasses> prior{};
  for (std::size_t c = 0; c < kNumClasses; ++c) prior[c] = static_cast<double>(spec.class_sizes[c]) / total;

  // Probability that one cue token points at class j given true class y.
  const double off = (1.0 - spec.signal) / kNumClasses;
  const double on = spec.signal + off;

  double acc = 0.0;
  const double p_n = 1.0 / static_cast<double>(spec.max_cues - spec.min_cues + 1);
  for (std::size_t n = spec.min_cues; n <= spec.max_cues; ++n) {
    double acc_n = 0.0;
    for (std::size_t a = 0; a <= n; ++a) {
      for (std::size_t b = 0; a + b <= n; ++b) {
        const std::array<std::size_t, kNumClasses> counts = {a, b, n - a - b};
        const double log_coef = log_factorial(n) - log_factorial(counts[0]) -
                                log_factorial(counts[1]) - log_factorial(counts[2]);
        double best = 0.0;
        for (std::size_t y = 0; y < kNumClasses; ++y) {
          double logp = log_coef;
          for (std::size_t j = 0; j < kNumClasses; ++j) {
            const double p = j == y ? on : off;
            if (counts[j] > 0) logp += static_cast<double>(counts[j]) * std::log(p);
          }
          const double joint = prior[y] * std::exp(logp);
          best = std::max(best, joint);
        }
        acc_n += best;
      }
    }
    acc += p_n * acc_n;
  }
  return acc;
}

}  // namespace emobow
