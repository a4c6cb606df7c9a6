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

#include <string>
#include <string_view>
#include <vector>

#include "epikg/evaluator/keywords.hpp"

namespace epikg::evaluator {

// v0: raw substring matching. v1: word-boundary matching on the answer with
// evidence preambles stripped. v2: v1 plus the abstention gate and the
// ordering and change-word requirements.
enum class EvaluatorVersion { V0, V1, V2 };

std::string_view to_string(EvaluatorVersion v);  // "v0", "v1", "v2"
EvaluatorVersion parse_version(std::string_view s);  // ConfigError if unknown

struct EvalResult {
  bool correct = false;
  std::vector<std::string> matched;  // keywords found, in configuration order
  bool abstention = false;
  EvaluatorVersion version = EvaluatorVersion::V2;
  std::size_t stripped_length = 0;
};

// Keyword-only categories never read `expected`; a matching category keyword
// is enough, whatever the polarity of the answer. Gold-consulting categories
// need gold_coverage of the gold content words.
// Throws ConfigError for an unknown category.
EvalResult evaluate(const std::string& category, std::string_view expected,
                    std::string_view predicted, EvaluatorVersion version,
                    const KeywordConfig& cfg);

}  // namespace epikg::evaluator
