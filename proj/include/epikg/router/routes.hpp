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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epikg/kgraph/graph.hpp"
#include "epikg/kgraph/traversal.hpp"
#include "epikg/router/intent.hpp"

namespace epikg::router {

using kgraph::GraphSnapshot;
using kgraph::TemporalEdge;

struct EdgeFilter {
  std::set<std::string> predicates;  // empty accepts any predicate
  std::optional<epistemics::Experiencer> experiencer;

  bool accepts(const TemporalEdge& e) const;
};

struct AdmissionDiff {
  std::string earlier;
  std::string later;
  std::set<ConceptId> added;    // later only
  std::set<ConceptId> removed;  // earlier only
  std::set<ConceptId> shared;
};

struct ChangeReport {
  std::vector<std::string> admissions;  // in admission order
  std::vector<AdmissionDiff> pairs;     // every (k, k') with k before k'
  bool single_admission = false;        // fewer than two admissions: no pairs
};

// Set differences of the per-admission concept sets of edges passing the
// filter.
ChangeReport route_change(const GraphSnapshot& g, const EdgeFilter& filter = {});

enum class LineKind { Edge, NotFound, Resolved, Change };
enum class LineStyle { Labeled, Unlabeled };

struct EvidenceLine {
  LineKind kind = LineKind::Edge;
  std::string text;
  std::optional<EdgeId> edge;
  std::optional<ConceptId> concept_id;
  std::optional<epistemics::Assertion> assertion;
};

struct EvidenceBundle {
  Intent intent = Intent::Default;
  std::vector<EvidenceLine> lines;
  std::vector<ConceptId> not_found;
  std::string template_id;
};

// Patient-fact edges (source is the patient node) for the concepts that are
// Current or open-valid, minus Conditional and Hypothetical assertions; one
// edge per concept, the most recently recorded. NOT FOUND per concept left
// without an edge.
EvidenceBundle route_current_state(const GraphSnapshot& g, const std::set<ConceptId>& concepts,
                                   const EdgeFilter& filter = {});

// Past patient-fact edges for the concepts, then RESOLVED entries for
// concepts seen in an earlier admission but not in the latest.
EvidenceBundle route_historical(const GraphSnapshot& g, const std::set<ConceptId>& concepts,
                                const EdgeFilter& filter = {});

struct DefaultOptions {
  kgraph::TraversalOptions traversal;
  std::size_t max_edges = 25;
  LineStyle style = LineStyle::Labeled;
};

// Scored, confidence-pruned BFS neighbourhood, score descending then id.
EvidenceBundle route_default(const GraphSnapshot& g, const std::set<ConceptId>& concepts,
                             const std::set<std::string>& relevant_types,
                             const DefaultOptions& options = {}, const EdgeFilter& filter = {});

// Added / Removed / Continued lines for a change report.
EvidenceBundle change_bundle(const GraphSnapshot& g, const ChangeReport& report,
                             const EdgeFilter& filter = {});

bool is_patient_fact(const GraphSnapshot& g, const TemporalEdge& e);

}  // namespace epikg::router
