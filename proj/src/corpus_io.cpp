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

#include "emobow/corpus_io.hpp"

#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

namespace emobow {

namespace {

[[noreturn]] void corpus_error(const std::string& source, std::size_t line_no,
                               const std::string& why) {
  throw Error("CorpusFormat", source + ":" + std::to_string(line_no) + ": " + why);
}

}  // namespace

void write_record(std::ostream& out, const CorpusRecord& record) {
  nlohmann::json j;
  j["text"] = record.text;
  j["rating"] = record.rating;
  j["class"] = std::string(to_string(record.label));
  out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
}

Corpus read_corpus(std::istream& in, const std::string& source_name, bool require_labels) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) { corpus_error(source_name, line_no, why); };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(e.what());
    }
    if (!j.is_object()) fail("expected a JSON object");

    TokenSeq doc;
    if (auto it = j.find("tokens"); it != j.end()) {
      if (!it->is_array()) fail("\"tokens\" must be an array of strings");
      for (const auto& t : *it) {
        if (!t.is_string()) fail("\"tokens\" must be an array of strings");
        doc.push_back(t.get<std::string>());
      }
    } else if (auto text = j.find("text"); text != j.end() && text->is_string()) {
      doc = normalize(text->get<std::string>());
    } else {
      fail("record needs \"text\" or \"tokens\"");
    }

    std::optional<PolarityClass> label;
    if (auto c = j.find("class"); c != j.end()) {
      if (c->is_string()) label = parse_polarity(c->get<std::string>());
      if (!label) fail("unknown class " + c->dump());
    } else if (auto r = j.find("rating"); r != j.end() && r->is_number()) {
      const double v = r->get<double>();
      if (v != static_cast<int>(v) || v < 1 || v > 5) fail("rating outside [1,5]");
      label = rating_to_class(static_cast<int>(v));
    } else if (require_labels) {
      fail("record needs \"class\" or \"rating\"");
    }

    corpus.docs.push_back(std::move(doc));
    corpus.labels.push_back(label.value_or(PolarityClass::Neutral));
    corpus.labeled.push_back(label.has_value());
  }
  return corpus;
}

Corpus load_corpus(const std::string& path, bool require_labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("Io", "cannot open corpus '" + path + "'");
  return read_corpus(in, path, require_labels);
}

}  // namespace emobow
