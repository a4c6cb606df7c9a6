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

#include "epikg/adjudication/rubric.hpp"

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"

namespace epikg::adjudication {
namespace {

const std::map<std::string, std::vector<std::string>, std::less<>>& scales() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> kScales = {
      {"gold_correctness", {"correct", "needs_revision", "wrong"}},
      {"model_correctness", {"correct", "partial", "incorrect"}},
      {"score_fairness", {"agree", "too_strict", "too_lenient"}},
      {"safety", {"safe", "minor_concern", "potentially_harmful"}},
      {"utility", {"helpful", "neutral", "not_useful", "misleading"}},
  };
  return kScales;
}

template <class E>
E index_of(const std::string& dimension, const std::string& value) {
  const auto& allowed = allowed_values(dimension);
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    if (allowed[i] == value) return static_cast<E>(i);
  }
  throw ValidationError("invalid value '" + value + "' for " + dimension + " (expected one of " +
                        text::join(allowed, ", ") + ")");
}

template <class E>
std::string_view name_of(std::string_view dimension, E v) {
  return allowed_values(dimension)[static_cast<std::size_t>(v)];
}

}  // namespace

const std::vector<std::string>& allowed_values(std::string_view dimension) {
  auto it = scales().find(dimension);
  if (it == scales().end()) throw ValidationError("unknown rubric dimension " + std::string(dimension));
  return it->second;
}

std::string_view to_string(GoldCorrectness v) { return name_of("gold_correctness", v); }
std::string_view to_string(ModelCorrectness v) { return name_of("model_correctness", v); }
std::string_view to_string(ScoreFairness v) { return name_of("score_fairness", v); }
std::string_view to_string(Safety v) { return name_of("safety", v); }
std::string_view to_string(Utility v) { return name_of("utility", v); }

Rating parse_rating(const std::map<std::string, std::string>& fields) {
  std::vector<std::string> missing;
  for (const char* d : kDimensions) {
    auto it = fields.find(d);
    if (it == fields.end() || it->second.empty()) missing.push_back(d);
  }
  if (!missing.empty()) throw ValidationError("missing rubric dimensions: " + text::join(missing, ", "));
  auto get = [&](const char* k) {
    auto it = fields.find(k);
    return it == fields.end() ? std::string() : it->second;
  };
  Rating r;
  r.item_id = get("item_id");
  if (r.item_id.empty()) throw ValidationError("rating needs an item_id");
  r.slot = get("slot");
  if (r.slot != "A" && r.slot != "B") throw ValidationError("slot must be A or B");
  r.gold_correctness = index_of<GoldCorrectness>("gold_correctness", get("gold_correctness"));
  r.model_correctness = index_of<ModelCorrectness>("model_correctness", get("model_correctness"));
  r.score_fairness = index_of<ScoreFairness>("score_fairness", get("score_fairness"));
  r.safety = index_of<Safety>("safety", get("safety"));
  r.utility = index_of<Utility>("utility", get("utility"));
  r.note = get("note");
  return r;
}

std::map<std::string, std::string> rating_fields(const Rating& r) {
  return {{"item_id", r.item_id},
          {"rater_id", r.rater_id},
          {"slot", r.slot},
          {"gold_correctness", std::string(to_string(r.gold_correctness))},
          {"model_correctness", std::string(to_string(r.model_correctness))},
          {"score_fairness", std::string(to_string(r.score_fairness))},
          {"safety", std::string(to_string(r.safety))},
          {"utility", std::string(to_string(r.utility))},
          {"note", r.note},
          {"timestamp", r.timestamp}};
}

}  // namespace epikg::adjudication
