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

#include "epikg/kgraph/materialize.hpp"

#include <algorithm>

#include "epikg/core/errors.hpp"
#include "epikg/kgraph/allen.hpp"

namespace epikg::kgraph {

std::string patient_node_id(std::string_view patient_id) {
  return "patient:" + std::string(patient_id);
}

std::string concept_node_id(ConceptId c) { return "concept:" + to_string(c); }

namespace {

struct Span {
  Date lo, hi;
};

Node concept_node(const epistemics::Lexicon& lexicon, ConceptId c, const MaterializeOptions& opt) {
  const auto* vc = lexicon.find(c);
  if (!vc) throw DataError("mention of concept " + to_string(c) + " missing from vocabulary");
  auto t = opt.domain_node_types.find(vc->domain);
  return Node{concept_node_id(c), c, vc->name,
              t == opt.domain_node_types.end() ? vc->domain : t->second};
}

}  // namespace

MaterializeResult materialize(const std::string& patient_id,
                              const std::vector<SourceDocument>& documents,
                              const epistemics::Lexicon& lexicon, const MaterializeOptions& options,
                              std::shared_ptr<const TypeRegistry> edge_types,
                              std::shared_ptr<const TypeRegistry> node_types) {
  MaterializeResult result;
  result.graph = std::make_unique<PatientGraph>(patient_id);
  PatientGraph& g = *result.graph;
  g.set_registries(std::move(edge_types), std::move(node_types));
  g.add_node(Node{patient_node_id(patient_id), std::nullopt, patient_id, kPatientNodeType});

  std::map<std::string, Span> admission_span;
  for (const auto& d : documents) {
    if (!d.hadm_id) continue;
    auto [it, fresh] = admission_span.try_emplace(*d.hadm_id, Span{d.doc_date, d.doc_date});
    if (!fresh) {
      it->second.lo = std::min(it->second.lo, d.doc_date);
      it->second.hi = std::max(it->second.hi, d.doc_date);
    }
  }

  std::set<ConceptId> mentioned;
  for (const auto& d : documents) {
    std::vector<EdgeId> ids;
    for (const auto& m : d.mentions) {
      g.add_node(concept_node(lexicon, m.concept_id, options));
      mentioned.insert(m.concept_id);
      const auto* vc = lexicon.find(m.concept_id);
      auto pred = options.domain_predicates.find(vc->domain);
      if (pred == options.domain_predicates.end())
        throw ConfigError("no predicate configured for domain '" + vc->domain + "'");

      TemporalEdge e;
      e.source = patient_node_id(patient_id);
      e.predicate = pred->second;
      e.target = concept_node_id(m.concept_id);
      e.assertion = m.assertion;
      e.experiencer = m.experiencer;
      e.temporality = m.temporality;
      e.confidence = m.confidence;
      e.valid.event_date = d.doc_date;
      e.valid.valid_from = d.doc_date;
      if (m.temporality == Temporality::Past) e.valid.valid_to = d.doc_date;
      e.transaction.recorded_at = d.recorded_at;
      e.transaction.doc_date = d.doc_date;
      e.transaction.created_at = options.created_at.value_or(d.recorded_at);
      e.hadm_id = d.hadm_id;
      e.provenance = d.doc_id;
      if (d.hadm_id) {
        const Span& s = admission_span.at(*d.hadm_id);
        e.relation = allen_relation(to_interval(e.valid),
                                    Interval{s.lo.days_since_epoch(), s.hi.days_since_epoch()});
      }
      ids.push_back(g.add_edge(std::move(e)));
    }
    result.mention_edges.push_back(std::move(ids));
  }

  if (options.vocabulary_edges) {
    const Timestamp created =
        options.created_at.value_or(documents.empty() ? Timestamp{} : documents.front().recorded_at);
    for (const auto& r : lexicon.relations()) {
      if (!mentioned.count(r.from) && !mentioned.count(r.to)) continue;
      g.add_node(concept_node(lexicon, r.from, options));
      g.add_node(concept_node(lexicon, r.to, options));
      TemporalEdge e;
      e.source = concept_node_id(r.from);
      e.predicate = r.relationship;
      e.target = concept_node_id(r.to);
      e.confidence = 1.0;
      e.transaction.created_at = created;
      e.provenance = kVocabularyProvenance;
      g.add_edge(std::move(e));
    }
  }
  return result;
}

std::vector<PreservationViolation> check_preservation(const std::vector<SourceDocument>& documents,
                                                      const MaterializeResult& result) {
  std::vector<PreservationViolation> out;
  auto snap = result.graph->snapshot();
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (std::size_t m = 0; m < documents[d].mentions.size(); ++m) {
      const auto& mention = documents[d].mentions[m];
      const TemporalEdge* e = snap->edge(result.mention_edges.at(d).at(m));
      epistemics::EpistemicState found{};
      if (e) {
        found = {snap->edge_concept(*e).value_or(ConceptId{}), e->assertion, e->experiencer,
                 e->temporality};
      }
      if (!e || found != mention.state())
        out.push_back({documents[d].doc_id, m, mention.state(), found});
    }
  }
  return out;
}

}  // namespace epikg::kgraph
