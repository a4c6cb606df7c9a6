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

// Case-insensitive match bounded by non-word characters or string ends.
// Throws std::invalid_argument for an empty keyword.
bool word_boundary_match(std::string_view text, std::string_view keyword);

bool substring_match(std::string_view text, std::string_view keyword);

// Drops every line between matching evidence sentinels (an unterminated
// block runs to the end) and every standalone typed evidence line
// ("ABSENT: x [...]", "FACT: ...", "RESOLVED: ...", "NOT FOUND: ...").
std::string strip_preamble(std::string_view answer);

bool is_typed_evidence_line(std::string_view line);

// Abstention pattern present and no clinical-claim pattern present.
bool detect_abstention(std::string_view answer, const KeywordConfig& cfg);

// Distinct lowercased word tokens of the gold answer minus stopwords, in
// first-occurrence order.
std::vector<std::string> gold_content_words(std::string_view gold, const KeywordConfig& cfg);

}  // namespace epikg::evaluator
