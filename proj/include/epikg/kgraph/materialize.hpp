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
#include <optional>
#include <string>
#include <vector>

#include "epikg/epistemics/lexicon.hpp"
#include "epikg/epistemics/mentions.hpp"
#include "epikg/kgraph/graph.hpp"

namespace epikg::kgraph {

struct SourceDocument {
  std::string doc_id;
  std::optional<std::string> hadm_id;
  Date doc_date;
  Timestamp recorded_at;
  std::vector<epistemics::Mention> mentions;
};

struct MaterializeOptions {
  // Transaction created_at for every edge; defaults to each document's
  // recorded_at so repeated builds are byte-identical.
  std::optional<Timestamp> created_at;
  // Vocabulary domain -> patient-fact predicate.
  std::map<std::string, std::string> domain_predicates = {
      {"Condition", "has_condition"},       {"Drug", "takes_medication"},
      {"Procedure", "underwent_procedure"}, {"Measurement", "has_measurement"},
      {"Observation", "has_finding"},
  };
  std::map<std::string, std::string> domain_node_types = {
      {"Condition", "Condition"},   {"Drug", "Drug"},
      {"Procedure", "Procedure"},   {"Measurement", "Measurement"},
      {"Observation", "Observation"},
  };
  bool vocabulary_edges = true;
};

struct MaterializeResult {
  std::unique_ptr<PatientGraph> graph;
  // mention_edges[d][m] is the edge built from documents[d].mentions[m].
  std::vector<std::vector<EdgeId>> mention_edges;
};

std::string patient_node_id(std::string_view patient_id);
std::string concept_node_id(ConceptId c);
inline constexpr const char* kVocabularyProvenance = "vocabulary";
inline constexpr const char* kPatientNodeType = "Patient";

// One patient -> concept edge per mention. Valid time starts at the
// document date and is closed at it only for Past mentions; the stored
// relation compares that interval with the admission's document-date span.
// Vocabulary relationships touching a mentioned concept become
// concept -> concept edges without an admission.
MaterializeResult materialize(const std::string& patient_id,
                              const std::vector<SourceDocument>& documents,
                              const epistemics::Lexicon& lexicon,
                              const MaterializeOptions& options = {},
                              std::shared_ptr<const TypeRegistry> edge_types = nullptr,
                              std::shared_ptr<const TypeRegistry> node_types = nullptr);

struct PreservationViolation {
  std::string doc_id;
  std::size_t mention_index;
  epistemics::EpistemicState expected;
  epistemics::EpistemicState found;
};

// Recovers (c, alpha, xi, tau) from every mention's edge and compares it with
// the mention.
std::vector<PreservationViolation> check_preservation(const std::vector<SourceDocument>& documents,
                                                      const MaterializeResult& result);

}  // namespace epikg::kgraph
