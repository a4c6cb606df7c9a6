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

#include "epikg/router/routes.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "epikg/core/text.hpp"
#include "epikg/kgraph/materialize.hpp"
#include "epikg/router/evidence.hpp"

namespace epikg::router {
namespace {

using epistemics::Assertion;
using epistemics::Temporality;

Timestamp recorded(const TemporalEdge& e) {
  if (e.transaction.recorded_at) return *e.transaction.recorded_at;
  return e.transaction.created_at;
}

// Later-recorded edge wins; ties go to the higher id.
bool more_recent(const TemporalEdge& a, const TemporalEdge& b) {
  const Timestamp ta = recorded(a), tb = recorded(b);
  if (ta != tb) return ta > tb;
  return a.id > b.id;
}

std::map<ConceptId, std::vector<const TemporalEdge*>> admission_edges(const GraphSnapshot& g,
                                                                      const std::string& hadm,
                                                                      const EdgeFilter& filter) {
  std::map<ConceptId, std::vector<const TemporalEdge*>> out;
  for (const TemporalEdge* e : g.edges_in_admission(hadm)) {
    if (!filter.accepts(*e)) continue;
    if (auto c = g.edge_concept(*e)) out[*c].push_back(e);
  }
  return out;
}

EvidenceLine edge_line(const GraphSnapshot& g, const TemporalEdge& e, LineStyle style) {
  EvidenceLine l;
  l.kind = LineKind::Edge;
  l.text = format_edge_line(g, e, style);
  l.edge = e.id;
  l.concept_id = g.edge_concept(e);
  if (style == LineStyle::Labeled) l.assertion = e.assertion;
  return l;
}

}  // namespace

bool EdgeFilter::accepts(const TemporalEdge& e) const {
  if (!predicates.empty() && !predicates.count(e.predicate)) return false;
  if (experiencer && e.experiencer != *experiencer) return false;
  return true;
}

bool is_patient_fact(const GraphSnapshot& g, const TemporalEdge& e) {
  const kgraph::Node* s = g.node(e.source);
  return s && s->type == kgraph::kPatientNodeType;
}

ChangeReport route_change(const GraphSnapshot& g, const EdgeFilter& filter) {
  ChangeReport r;
  r.admissions = g.admissions();
  if (r.admissions.size() < 2) {
    r.single_admission = true;
    return r;
  }
  std::vector<std::set<ConceptId>> sets;
  for (const auto& h : r.admissions) {
    std::set<ConceptId> s;
    for (const auto& [c, edges] : admission_edges(g, h, filter)) s.insert(c);
    sets.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      AdmissionDiff d;
      d.earlier = r.admissions[i];
      d.later = r.admissions[j];
      std::set_difference(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end(),
                          std::inserter(d.added, d.added.end()));
      std::set_difference(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                          std::inserter(d.removed, d.removed.end()));
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                            std::inserter(d.shared, d.shared.end()));
      r.pairs.push_back(std::move(d));
    }
  }
  return r;
}

EvidenceBundle change_bundle(const GraphSnapshot& g, const ChangeReport& report,
                             const EdgeFilter& filter) {
  EvidenceBundle b;
  b.intent = Intent::Change;
  b.template_id = template_for(Intent::Change);
  if (report.single_admission) {
    b.lines.push_back({LineKind::Change,
                       "Only one admission on record; no cross-admission comparison possible.",
                       std::nullopt, std::nullopt, std::nullopt});
    return b;
  }
  for (const auto& d : report.pairs) {
    const auto earlier = admission_edges(g, d.earlier, filter);
    const auto later = admission_edges(g, d.later, filter);
    auto render = [&](const std::set<ConceptId>& concepts,
                      const std::map<ConceptId, std::vector<const TemporalEdge*>>& source) {
      std::vector<std::string> items;
      for (ConceptId c : concepts) {
        const auto& edges = source.at(c);
        const TemporalEdge* latest = *std::min_element(
            edges.begin(), edges.end(),
            [](const TemporalEdge* a, const TemporalEdge* b) { return more_recent(*a, *b); });
        items.push_back(concept_label(g, c) + " [" + std::string(to_string(latest->assertion)) + "]");
      }
      std::sort(items.begin(), items.end());
      return items.empty() ? std::string("none") : text::join(items, ", ");
    };
    auto line = [&](std::string t) {
      b.lines.push_back({LineKind::Change, std::move(t), std::nullopt, std::nullopt, std::nullopt});
    };
    line("Admissions compared: " + d.earlier + " -> " + d.later);
    line("Added (admission " + d.later + " only): " + render(d.added, later));
    line("Removed (admission " + d.earlier + " only): " + render(d.removed, earlier));
    line("Continued (both admissions): " + render(d.shared, later));
  }
  return b;
}

EvidenceBundle route_current_state(const GraphSnapshot& g, const std::set<ConceptId>& concepts,
                                   const EdgeFilter& filter) {
  EvidenceBundle b;
  b.intent = Intent::CurrentState;
  b.template_id = template_for(Intent::CurrentState);
  for (ConceptId c : concepts) {
    const TemporalEdge* best = nullptr;
    for (const TemporalEdge* e : g.edges_for_concept(c)) {
      if (!is_patient_fact(g, *e) || !filter.accepts(*e)) continue;
      if (e->temporality != Temporality::Current && !e->valid.open()) continue;
      if (e->assertion == Assertion::Conditional || e->assertion == Assertion::Hypothetical) continue;
      if (!best || more_recent(*e, *best)) best = e;
    }
    if (best) {
      b.lines.push_back(edge_line(g, *best, LineStyle::Labeled));
    } else {
      b.not_found.push_back(c);
      b.lines.push_back({LineKind::NotFound, format_not_found(concept_label(g, c)), std::nullopt, c,
                         std::nullopt});
    }
  }
  return b;
}

EvidenceBundle route_historical(const GraphSnapshot& g, const std::set<ConceptId>& concepts,
                                const EdgeFilter& filter) {
  EvidenceBundle b;
  b.intent = Intent::Historical;
  b.template_id = template_for(Intent::Historical);
  std::vector<const TemporalEdge*> past;
  for (const TemporalEdge* e : g.edges_with_temporality(Temporality::Past)) {
    if (!is_patient_fact(g, *e) || !filter.accepts(*e)) continue;
    auto c = g.edge_concept(*e);
    if (c && concepts.count(*c)) past.push_back(e);
  }
  for (const TemporalEdge* e : past) b.lines.push_back(edge_line(g, *e, LineStyle::Labeled));

  const auto admissions = g.admissions();
  if (admissions.size() >= 2) {
    const std::string& latest = admissions.back();
    std::set<ConceptId> in_latest;
    for (const auto& [c, edges] : admission_edges(g, latest, filter)) in_latest.insert(c);
    std::map<ConceptId, std::string> first_seen;
    for (std::size_t i = 0; i + 1 < admissions.size(); ++i) {
      for (const auto& [c, edges] : admission_edges(g, admissions[i], filter)) {
        if (concepts.count(c) && !in_latest.count(c)) first_seen.try_emplace(c, admissions[i]);
      }
    }
    for (const auto& [c, hadm] : first_seen) {
      b.lines.push_back({LineKind::Resolved,
                         std::string(kResolvedLabel) + ": " + concept_label(g, c) +
                             " [recorded in admission " + hadm + ", absent from latest admission " +
                             latest + "]",
                         std::nullopt, c, std::nullopt});
    }
  }
  return b;
}

EvidenceBundle route_default(const GraphSnapshot& g, const std::set<ConceptId>& concepts,
                             const std::set<std::string>& relevant_types,
                             const DefaultOptions& options, const EdgeFilter& filter) {
  EvidenceBundle b;
  b.intent = Intent::Default;
  b.template_id = template_for(Intent::Default);
  std::vector<std::pair<double, const TemporalEdge*>> scored;
  for (EdgeId id : kgraph::bfs_traverse(g, concepts, options.traversal)) {
    const TemporalEdge* e = g.edge(id);
    if (!filter.accepts(*e)) continue;
    scored.emplace_back(kgraph::score_edge(*e, relevant_types), e);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second->id < b.second->id;
  });
  if (scored.size() > options.max_edges) scored.resize(options.max_edges);
  for (const auto& [s, e] : scored) b.lines.push_back(edge_line(g, *e, options.style));
  return b;
}

}  // namespace epikg::router
