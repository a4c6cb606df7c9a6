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

#include "epikg/router/intent.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"

namespace epikg::router {

std::string_view to_string(Intent i) {
  switch (i) {
    case Intent::Change: return "change";
    case Intent::CurrentState: return "current_state";
    case Intent::Historical: return "historical";
    case Intent::Default: return "default";
  }
  return "default";
}

Intent parse_intent(std::string_view s) {
  const std::string n = text::lower(text::trim(s));
  for (Intent i : kAllIntents) {
    if (n == to_string(i)) return i;
  }
  throw std::invalid_argument("unknown intent: " + std::string(s));
}

std::string_view to_string(IntentMode m) { return m == IntentMode::Oracle ? "oracle" : "keyword"; }

IntentRuleSet IntentRuleSet::parse(std::string_view json_text, const std::string& source) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  IntentRuleSet rules;
  try {
    std::vector<Intent> priority;
    for (const auto& p : doc.at("priority")) priority.push_back(parse_intent(p.get<std::string>()));
    const json& kw = doc.at("keywords");
    for (Intent i : priority) {
      std::vector<std::string> words;
      if (kw.contains(std::string(to_string(i)))) {
        for (const auto& w : kw.at(std::string(to_string(i)))) {
          words.push_back(w.get<std::string>());
          if (words.back().empty()) throw ConfigError("empty keyword for " + std::string(to_string(i)));
        }
      }
      rules.keywords.emplace_back(i, std::move(words));
    }
    for (auto it = kw.begin(); it != kw.end(); ++it) {
      Intent i = parse_intent(it.key());
      bool listed = false;
      for (Intent p : priority) listed = listed || p == i;
      if (!listed) throw ConfigError("keywords for intent '" + it.key() + "' missing from priority");
    }
    for (auto it = doc.at("oracle").begin(); it != doc.at("oracle").end(); ++it) {
      OracleRoute r;
      r.intent = parse_intent(it.value().at("intent").get<std::string>());
      if (it.value().contains("experiencer") && !it.value()["experiencer"].is_null())
        r.experiencer = epistemics::parse_experiencer(it.value()["experiencer"].get<std::string>());
      rules.oracle[it.key()] = r;
    }
    if (doc.contains("edge_type_cues")) {
      for (auto it = doc["edge_type_cues"].begin(); it != doc["edge_type_cues"].end(); ++it)
        rules.edge_type_cues[it.key()] = it.value().get<std::string>();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return rules;
}

IntentRuleSet IntentRuleSet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open intent rules " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

OracleRoute route_for(std::string_view question, IntentMode mode,
                      const std::optional<std::string>& category, const IntentRuleSet& rules) {
  if (mode == IntentMode::Oracle) {
    if (!category) throw ConfigError("oracle intent classification needs a category");
    auto it = rules.oracle.find(*category);
    if (it == rules.oracle.end())
      throw ConfigError("no oracle intent mapping for category '" + *category + "'");
    return it->second;
  }
  for (const auto& [intent, words] : rules.keywords) {
    for (const auto& w : words) {
      if (text::contains_word(question, w)) return OracleRoute{intent, std::nullopt};
    }
  }
  return OracleRoute{};
}

Intent classify_intent(std::string_view question, IntentMode mode,
                       const std::optional<std::string>& category, const IntentRuleSet& rules) {
  return route_for(question, mode, category, rules).intent;
}

std::set<std::string> relevant_edge_types(std::string_view question, const IntentRuleSet& rules) {
  std::set<std::string> out;
  for (const auto& [cue, predicate] : rules.edge_type_cues) {
    if (text::contains_word(question, cue)) out.insert(predicate);
  }
  return out;
}

}  // namespace epikg::router
