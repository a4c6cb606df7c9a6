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

#include <string_view>
#include <vector>

#include "epikg/epistemics/labels.hpp"
#include "epikg/epistemics/patterns.hpp"
#include "epikg/epistemics/tokenizer.hpp"

namespace epikg::epistemics {

inline constexpr double kDefaultPresentConfidence = 0.9;

struct AssertionResult {
  Assertion label = Assertion::Present;
  double confidence = kDefaultPresentConfidence;
  const TriggerPattern* trigger = nullptr;  // null when the default applied
};

// A trigger occurrence in a tokenized sentence, as token indices [begin, end).
struct TriggerHit {
  const TriggerPattern* pattern;
  std::size_t begin;
  std::size_t end;
};

// All trigger occurrences in `tokens`. Occurrences strictly inside a longer
// occurrence ("history of" within "family history of") are dropped.
std::vector<TriggerHit> find_triggers(const std::vector<Token>& tokens,
                                      const PatternInventory& inventory);

// True when the hit's scope window reaches the concept tokens [cb, ce).
bool scope_covers(const std::vector<Token>& tokens, const TriggerHit& hit, std::size_t cb,
                  std::size_t ce);

// All three classifiers throw std::out_of_range when the span is empty or
// extends past the sentence.
AssertionResult classify_assertion(std::string_view sentence, CharSpan concept_span,
                                   const PatternInventory& inventory);

// Family when the section is a family-history section, or when an
// experiencer:family trigger or a FamilyHistory assertion trigger scopes the
// span.
Experiencer classify_experiencer(std::string_view sentence, CharSpan concept_span,
                                 std::string_view section, const PatternInventory& inventory);

// Explicit temporality triggers compete with the temporal reading of
// assertion triggers: Historical reads as Past, Conditional and Hypothetical
// as Future.
Temporality classify_temporality(std::string_view sentence, CharSpan concept_span,
                                 const PatternInventory& inventory);

bool is_family_history_section(std::string_view section);

}  // namespace epikg::epistemics
