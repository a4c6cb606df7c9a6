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

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "epikg/bench/condition.hpp"
#include "epikg/bench/corpus.hpp"
#include "epikg/bench/question.hpp"
#include "epikg/epistemics/lexicon.hpp"
#include "epikg/kgraph/graph.hpp"
#include "epikg/router/evidence.hpp"
#include "epikg/router/intent.hpp"
#include "epikg/router/routes.hpp"

namespace epikg::bench {

inline constexpr const char* kNoEdgesAnswer = "No relevant knowledge graph edges found";
inline constexpr const char* kDocumentsTemplate = "documents";
inline constexpr std::size_t kRagChunks = 5;
inline constexpr std::size_t kGraphDocuments = 3;

struct BenchResources {
  const epistemics::Lexicon* lexicon = nullptr;
  const router::IntentRuleSet* rules = nullptr;
  const router::TemplateSet* templates = nullptr;
  router::DefaultOptions default_options;
};

struct PatientData {
  std::shared_ptr<const kgraph::GraphSnapshot> graph;  // null when not ingested
  const std::vector<Note>* notes = nullptr;            // chronological
};

struct BuiltContext {
  std::string prompt;    // empty for the deterministic condition
  std::string evidence;  // what was retrieved, stored alongside the answer
  bool deterministic = false;
  std::string answer;  // set when deterministic
  router::Intent intent = router::Intent::Default;
};

// Concepts named in the question text.
std::set<ConceptId> question_concepts(const Question& q, const epistemics::Lexicon& lexicon);

// Serialized labeled lines of the patient-fact edges for the concepts, or
// kNoEdgesAnswer when there are none.
std::string deterministic_answer(const kgraph::GraphSnapshot& g, const std::set<ConceptId>& concepts);

// Throws DataError when a condition needs notes or a graph the patient lacks.
BuiltContext build_context(const Condition& c, const PatientData& patient, const Question& q,
                           const BenchResources& res);

}  // namespace epikg::bench
