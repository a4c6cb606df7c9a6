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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "epikg/epistemics/labels.hpp"

namespace epikg::router {

enum class Intent { Change, CurrentState, Historical, Default };

inline constexpr Intent kAllIntents[] = {Intent::Change, Intent::CurrentState, Intent::Historical,
                                         Intent::Default};

std::string_view to_string(Intent i);  // change, current_state, historical, default
Intent parse_intent(std::string_view s);

enum class IntentMode { Keyword, Oracle };
std::string_view to_string(IntentMode m);

struct OracleRoute {
  Intent intent = Intent::Default;
  std::optional<epistemics::Experiencer> experiencer;  // edge filter
};

struct IntentRuleSet {
  // Earlier entries win when several intents trigger.
  std::vector<std::pair<Intent, std::vector<std::string>>> keywords;
  std::map<std::string, OracleRoute> oracle;
  // Question cue word -> edge predicate it makes relevant ("medication" ->
  // takes_medication).
  std::map<std::string, std::string> edge_type_cues;

  // JSON {"priority": [...], "keywords": {intent: [...]}, "oracle": {category:
  // {"intent": ..., "experiencer": ...}}, "edge_type_cues": {...}}.
  static IntentRuleSet parse(std::string_view json_text, const std::string& source);
  static IntentRuleSet load(const std::filesystem::path& path);
};

// Keyword mode: first intent (by priority) with a word-boundary keyword hit,
// Default otherwise. Oracle mode: mapping-table lookup on the category;
// ConfigError if the category is missing or unmapped.
Intent classify_intent(std::string_view question, IntentMode mode,
                       const std::optional<std::string>& category, const IntentRuleSet& rules);

OracleRoute route_for(std::string_view question, IntentMode mode,
                      const std::optional<std::string>& category, const IntentRuleSet& rules);

std::set<std::string> relevant_edge_types(std::string_view question, const IntentRuleSet& rules);

}  // namespace epikg::router
