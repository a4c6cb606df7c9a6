// Copyright 2026 The EpiKG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epikg/epistemics/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epikg/core/errors.hpp"

namespace epikg::epistemics {
namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError(path + "/" + key, "missing field");
  return obj.at(key);
}

std::string require_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t require_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) throw SchemaError(path + "/" + key, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (auto& t : tokenize(s)) out.push_back(std::move(t.text));
  return out;
}

}  // namespace

Lexicon::Lexicon(std::vector<VocabularyConcept> concepts, std::vector<VocabularyRelation> relations)
    : concepts_(std::move(concepts)), relations_(std::move(relations)) {
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    const auto& c = concepts_[i];
    if (!by_id_.emplace(c.id, i).second)
      throw ValidationError("duplicate concept id " + to_string(c.id));
    std::vector<std::string> surfaces = c.synonyms;
    surfaces.insert(surfaces.begin(), c.name);
    for (const auto& s : surfaces) {
      auto toks = word_tokens(s);
      if (toks.empty()) continue;
      terms_[toks.front()].emplace_back(std::move(toks), c.id);
    }
  }
  for (auto& [first, list] : terms_) {
    std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      return a.first.size() > b.first.size();
    });
  }
  for (const auto& r : relations_) {
    if (!by_id_.count(r.from) || !by_id_.count(r.to))
      throw ValidationError("relationship references unknown concept " + to_string(r.from) +
                            " -> " + to_string(r.to));
  }
}

Lexicon Lexicon::parse(std::string_view json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", source + ": invalid JSON: " + e.what());
  }
  std::vector<VocabularyConcept> concepts;
  const json& cs = require(doc, "concepts", "");
  if (!cs.is_array()) throw SchemaError("/concepts", "expected an array");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string path = "/concepts/" + std::to_string(i);
    VocabularyConcept c;
    c.id = ConceptId(require_int(cs[i], "concept_id", path));
    c.name = require_string(cs[i], "name", path);
    c.domain = require_string(cs[i], "domain", path);
    if (cs[i].contains("synonyms")) {
      const json& syn = cs[i]["synonyms"];
      if (!syn.is_array()) throw SchemaError(path + "/synonyms", "expected an array");
      for (std::size_t k = 0; k < syn.size(); ++k) {
        if (!syn[k].is_string())
          throw SchemaError(path + "/synonyms/" + std::to_string(k), "expected a string");
        c.synonyms.push_back(syn[k].get<std::string>());
      }
    }
    concepts.push_back(std::move(c));
  }
  std::vector<VocabularyRelation> relations;
  if (doc.contains("relationships")) {
    const json& rs = doc["relationships"];
    if (!rs.is_array()) throw SchemaError("/relationships", "expected an array");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const std::string path = "/relationships/" + std::to_string(i);
      relations.push_back({ConceptId(require_int(rs[i], "from", path)),
                           ConceptId(require_int(rs[i], "to", path)),
                           require_string(rs[i], "relationship", path)});
    }
  }
  return Lexicon(std::move(concepts), std::move(relations));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open vocabulary " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::vector<TermMatch> Lexicon::match(std::string_view text) const {
  const auto tokens = tokenize(text);
  std::vector<TermMatch> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    auto it = terms_.find(tokens[i].text);
    bool matched = false;
    if (it != terms_.end()) {
      for (const auto& [toks, id] : it->second) {
        if (i + toks.size() > tokens.size()) continue;
        bool ok = true;
        for (std::size_t k = 1; k < toks.size() && ok; ++k) ok = tokens[i + k].text == toks[k];
        if (!ok) continue;
        CharSpan span{tokens[i].span.begin, tokens[i + toks.size() - 1].span.end};
        out.push_back({id, span, std::string(text.substr(span.begin, span.end - span.begin))});
        i += toks.size();
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return out;
}

const VocabularyConcept* Lexicon::find(ConceptId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &concepts_[it->second];
}

}  // namespace epikg::epistemics
