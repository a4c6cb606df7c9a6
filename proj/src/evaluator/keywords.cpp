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

#include "epikg/evaluator/keywords.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epikg/core/errors.hpp"

namespace epikg::evaluator {
namespace {

std::vector<std::string> strings(const nlohmann::json& j, const std::string& what) {
  std::vector<std::string> out;
  if (!j.is_array()) throw ConfigError(what + " must be an array of strings");
  for (const auto& v : j) {
    if (!v.is_string() || v.get<std::string>().empty())
      throw ConfigError(what + " must contain non-empty strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

KeywordConfig KeywordConfig::parse(std::string_view json_text, const std::string& source) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  KeywordConfig cfg;
  if (!doc.contains("categories") || !doc["categories"].is_object())
    throw ConfigError(source + ": missing object 'categories'");
  for (auto it = doc["categories"].begin(); it != doc["categories"].end(); ++it) {
    CategoryRule r;
    const json& c = it.value();
    if (c.contains("keywords")) r.keywords = strings(c["keywords"], source + ": " + it.key() + ".keywords");
    r.consults_gold = c.value("consults_gold", false);
    if (c.contains("v2_required"))
      r.v2_required = strings(c["v2_required"], source + ": " + it.key() + ".v2_required");
    cfg.categories[it.key()] = std::move(r);
  }
  for (const char* name : kCategories) {
    if (!cfg.categories.count(name))
      throw ConfigError(source + ": keyword set for category '" + name + "' missing");
  }
  auto list = [&](const char* key, std::vector<std::string>& dst) {
    if (doc.contains(key)) dst = strings(doc[key], source + ": " + key);
  };
  list("temporal", cfg.temporal);
  list("abstention", cfg.abstention);
  list("claim", cfg.claim);
  list("stopwords", cfg.stopwords);
  if (doc.contains("gold_coverage")) cfg.gold_coverage = doc["gold_coverage"].get<double>();
  if (!(cfg.gold_coverage > 0.0 && cfg.gold_coverage <= 1.0))
    throw ConfigError(source + ": gold_coverage must lie in (0, 1]");
  return cfg;
}

KeywordConfig KeywordConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open keyword configuration " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

const CategoryRule& KeywordConfig::rule(const std::string& category) const {
  auto it = categories.find(category);
  if (it == categories.end()) throw ConfigError("unknown question category '" + category + "'");
  return it->second;
}

}  // namespace epikg::evaluator
