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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "emobow/represent.hpp"
#include "golden.hpp"

using namespace emobow;
using testing::split_words;

namespace {

const TokenSeq& grisham_doc() {
  static const TokenSeq doc = normalize(testing::kGrishamText);
  return doc;
}

std::map<std::string, int> multiset(const TokenSeq& t) {
  std::map<std::string, int> m;
  for (const auto& w : t) ++m[w];
  return m;
}

bool sub_multiset(const TokenSeq& a, const TokenSeq& b) {
  auto mb = multiset(b);
  for (const auto& [w, n] : multiset(a))
    if (mb[w] < n) return false;
  return true;
}

}  // namespace

TEST_CASE("golden outputs on the Grisham review") {
  const auto lex = testing::grisham_lexicon();
  for (const auto& [kind, expected] : testing::golden_outputs()) {
    CAPTURE(to_string(kind));
    const TokenSeq got = transform(grisham_doc(), lex, kind);
    CHECK(testing::matches_golden(kind, got, expected));
    if (!testing::is_category_model(kind)) CHECK(join(got) == expected);
  }
}

TEST_CASE("category runs follow canonical order") {
  const auto lex = testing::grisham_lexicon();
  const std::string ces = join(transform(grisham_doc(), lex, ModelKind::CES_M));
  CHECK(ces.find("faking his own anger fear sadness negative grisham") != std::string::npos);
  CHECK(ces.find("usually trust positive frank") != std::string::npos);
  CHECK(ces.find("able to joy positive his") != std::string::npos);
}

TEST_CASE("category expansion uses canonical order") {
  const CategorySet death{Category::Anger, Category::Sadness, Category::Fear, Category::Negative};
  const auto all = expand_categories(death, ExpandMode::All);
  CHECK(std::vector<std::string>(all.begin(), all.end()) ==
        std::vector<std::string>{"anger", "fear", "sadness", "negative"});
  const auto emo = expand_categories({Category::Positive, Category::Joy}, ExpandMode::EmotionsOnly);
  CHECK(std::vector<std::string>(emo.begin(), emo.end()) == std::vector<std::string>{"joy"});
  CHECK(expand_categories({}, ExpandMode::All).empty());
  CHECK(expand_categories({Category::Joy}, ExpandMode::SentimentsOnly).empty());
}

TEST_CASE("abandon expands to its three categories") {
  Lexicon lex;
  lex.assign("abandon", {Category::Fear, Category::Sadness, Category::Negative});
  CHECK(transform({"abandon", "tale"}, lex, ModelKind::CES_M) ==
        TokenSeq{"fear", "sadness", "negative", "tale"});
}

TEST_CASE("empty lexicon degenerate outputs") {
  const Lexicon empty;
  const TokenSeq& doc = grisham_doc();
  for (ModelKind k : {ModelKind::ES, ModelKind::S, ModelKind::E}) CHECK(transform(doc, empty, k).empty());
  for (ModelKind k : {ModelKind::ES_G, ModelKind::S_G, ModelKind::E_G}) {
    const TokenSeq t = transform(doc, empty, k);
    CHECK(t.size() == doc.size());
    CHECK(std::all_of(t.begin(), t.end(), [](const std::string& w) { return w == kGenericToken; }));
  }
  for (ModelKind k : {ModelKind::M, ModelKind::CES_M, ModelKind::CS_M, ModelKind::CE_M, ModelKind::M_MINUS_ES})
    CHECK(transform(doc, empty, k) == doc);
}

TEST_CASE("model names round-trip") {
  for (ModelKind k : kAllModelKinds) CHECK(parse_model_kind(to_string(k)) == k);
  CHECK(to_string(ModelKind::M_MINUS_ES) == "m-es");
  CHECK(to_string(ModelKind::CES_M) == "ces+m");
  CHECK_FALSE(parse_model_kind("x"));
}

TEST_CASE("property: multiset algebra across random documents and lexicons") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const Lexicon lex = testing::random_lexicon(rng, 30);
    const TokenSeq doc = testing::random_doc(rng, 30, 25);
    const TokenSeq m = transform(doc, lex, ModelKind::M);
    const TokenSeq es = transform(doc, lex, ModelKind::ES);
    const TokenSeq rest = transform(doc, lex, ModelKind::M_MINUS_ES);
    TokenSeq both = es;
    both.insert(both.end(), rest.begin(), rest.end());
    CHECK(multiset(both) == multiset(m));
    CHECK(sub_multiset(transform(doc, lex, ModelKind::S), es));
    CHECK(sub_multiset(transform(doc, lex, ModelKind::E), es));
    const TokenSeq esg = transform(doc, lex, ModelKind::ES_G);
    CHECK(esg.size() == m.size());
    CHECK(transform(doc, lex, ModelKind::S_G).size() == m.size());
    CHECK(transform(doc, lex, ModelKind::E_G).size() == m.size());
    for (std::size_t i = 0; i < esg.size(); ++i) CHECK((esg[i] == m[i] || esg[i] == kGenericToken));
    CHECK(transform(doc, lex, ModelKind::CES_M) == transform(doc, lex, ModelKind::CES_M));
  }
}
