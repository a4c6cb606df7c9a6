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
#include <string>
#include <string_view>
#include <vector>

#include "epikg/core/ids.hpp"
#include "epikg/epistemics/tokenizer.hpp"

namespace epikg::epistemics {

// OMOP-style domain of a vocabulary concept.
struct VocabularyConcept {
  ConceptId id;
  std::string name;
  std::string domain;  // Condition, Drug, Procedure, Measurement, Observation
  std::vector<std::string> synonyms;
};

struct VocabularyRelation {
  ConceptId from;
  ConceptId to;
  std::string relationship;  // e.g. "is_a", "treats"
};

struct TermMatch {
  ConceptId concept_id;
  CharSpan span;
  std::string surface;
};

// Miniature concept vocabulary with dictionary term matching.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::vector<VocabularyConcept> concepts, std::vector<VocabularyRelation> relations);

  // JSON {"concepts": [{concept_id, name, domain, synonyms}], "relationships":
  // [{from, to, relationship}]}. Throws SchemaError with the offending path.
  static Lexicon parse(std::string_view json_text, const std::string& source);
  static Lexicon load(const std::filesystem::path& path);

  // Greedy left-to-right longest match over tokens; case-insensitive, never
  // splits a token.
  std::vector<TermMatch> match(std::string_view text) const;

  const VocabularyConcept* find(ConceptId id) const;
  const std::vector<VocabularyConcept>& concepts() const { return concepts_; }
  const std::vector<VocabularyRelation>& relations() const { return relations_; }

 private:
  std::vector<VocabularyConcept> concepts_;
  std::vector<VocabularyRelation> relations_;
  std::map<ConceptId, std::size_t> by_id_;
  // first token -> (term tokens, concept), longest first
  std::map<std::string, std::vector<std::pair<std::vector<std::string>, ConceptId>>> terms_;
};

}  // namespace epikg::epistemics
