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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace epikg::adjudication {

enum class GoldCorrectness { Correct, NeedsRevision, Wrong };
enum class ModelCorrectness { Correct, Partial, Incorrect };
enum class ScoreFairness { Agree, TooStrict, TooLenient };
enum class Safety { Safe, MinorConcern, PotentiallyHarmful };
enum class Utility { Helpful, Neutral, NotUseful, Misleading };

inline constexpr const char* kDimensions[] = {"gold_correctness", "model_correctness", "score_fairness",
                                              "safety", "utility"};

// Wire values, e.g. "needs_revision", "potentially_harmful".
std::string_view to_string(GoldCorrectness v);
std::string_view to_string(ModelCorrectness v);
std::string_view to_string(ScoreFairness v);
std::string_view to_string(Safety v);
std::string_view to_string(Utility v);

// Allowed wire values of a dimension, in scale order.
const std::vector<std::string>& allowed_values(std::string_view dimension);

struct Rating {
  std::string item_id;
  std::string rater_id;
  std::string slot;  // "A" or "B"
  GoldCorrectness gold_correctness = GoldCorrectness::Correct;
  ModelCorrectness model_correctness = ModelCorrectness::Correct;
  ScoreFairness score_fairness = ScoreFairness::Agree;
  Safety safety = Safety::Safe;
  Utility utility = Utility::Helpful;
  std::string note;
  std::string timestamp;
};

// Builds a rating from wire fields (item_id, slot, the five dimensions and
// an optional note). Throws ValidationError naming every missing dimension,
// or the first field with an invalid value.
Rating parse_rating(const std::map<std::string, std::string>& fields);

std::map<std::string, std::string> rating_fields(const Rating& r);

}  // namespace epikg::adjudication
