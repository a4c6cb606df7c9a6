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
#include <string>
#include <string_view>
#include <vector>

#include "epikg/kgraph/graph.hpp"
#include "epikg/router/routes.hpp"

namespace epikg::router {

inline constexpr std::string_view kGraphBegin = "=== BEGIN GRAPH EVIDENCE ===";
inline constexpr std::string_view kGraphEnd = "=== END GRAPH EVIDENCE ===";
inline constexpr std::string_view kDocumentsBegin = "=== BEGIN DOCUMENTS ===";
inline constexpr std::string_view kDocumentsEnd = "=== END DOCUMENTS ===";
inline constexpr std::string_view kNoGraphEvidence = "No graph evidence available.";
inline constexpr std::string_view kNoDocuments = "No documents available.";
inline constexpr std::string_view kNotFoundLabel = "NOT FOUND";
inline constexpr std::string_view kResolvedLabel = "RESOLVED";
inline constexpr std::string_view kFactLabel = "FACT";

// Labeled:   ABSENT: pneumonia [has_condition | experiencer=PATIENT |
//            temporality=CURRENT | date=2150-03-02 | hadm=H1 | conf=0.95 | doc=D1]
// Unlabeled: FACT: pneumonia [has_condition | date=2150-03-02 | hadm=H1 | doc=D1]
// (each on one line). Concept-to-concept edges name both ends "a -> b".
std::string format_edge_line(const kgraph::GraphSnapshot& g, const kgraph::TemporalEdge& e,
                             LineStyle style);

std::string format_not_found(std::string_view concept_label);

std::string concept_label(const kgraph::GraphSnapshot& g, ConceptId c);

struct EvidenceDocument {
  std::string doc_id;
  std::string doc_type;
  std::string date;
  std::string hadm_id;
  std::string text;
};

std::string render_graph_block(const EvidenceBundle& bundle);
std::string render_documents_block(const std::vector<EvidenceDocument>& docs);

// Prompt templates keyed by id, loaded from <dir>/<id>.txt. Placeholders:
// {{question}}, {{intent}}, {{graph_evidence}}, {{documents}}.
class TemplateSet {
 public:
  TemplateSet() = default;
  explicit TemplateSet(std::map<std::string, std::string> templates);
  static TemplateSet load_dir(const std::filesystem::path& dir);

  // ConfigError when the id is unknown.
  const std::string& get(const std::string& id) const;
  bool contains(const std::string& id) const { return templates_.count(id) > 0; }

 private:
  std::map<std::string, std::string> templates_;
};

std::string template_for(Intent i);  // "change", "current_state", "historical", "default"

std::string compose_evidence(const EvidenceBundle& bundle, const std::vector<EvidenceDocument>& docs,
                             const TemplateSet& templates, std::string_view question);

}  // namespace epikg::router
