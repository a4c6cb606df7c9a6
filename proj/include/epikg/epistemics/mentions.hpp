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

#include "epikg/epistemics/classifier.hpp"
#include "epikg/epistemics/labels.hpp"
#include "epikg/epistemics/lexicon.hpp"
#include "epikg/epistemics/patterns.hpp"

namespace epikg::epistemics {

struct Mention {
  ConceptId concept_id;
  std::string surface;
  CharSpan span;  // into the text handed to extract_mentions, shifted by `offset`
  std::string section;
  Assertion assertion = Assertion::Present;
  Experiencer experiencer = Experiencer::Patient;
  Temporality temporality = Temporality::Current;
  double confidence = kDefaultPresentConfidence;

  EpistemicState state() const { return {concept_id, assertion, experiencer, temporality}; }
};

// Sentence boundaries: '.', '?', '!' followed by whitespace or end, and
// newlines. Returned as spans into `text`.
std::vector<CharSpan> split_sentences(std::string_view text);

// Runs term matching and the three classifiers over every sentence of one
// section body. A Present mention whose experiencer is Family is relabelled
// FamilyHistory.
std::vector<Mention> extract_mentions(std::string_view text, std::string_view section,
                                      const Lexicon& lexicon, const PatternInventory& inventory,
                                      std::size_t offset = 0);

}  // namespace epikg::epistemics
