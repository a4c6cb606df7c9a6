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

#include "epikg/kgraph/graph.hpp"

#include <algorithm>

#include "epikg/core/errors.hpp"

namespace epikg::kgraph {
namespace {

Timestamp transaction_key(const TemporalEdge& e) {
  if (e.transaction.recorded_at) return *e.transaction.recorded_at;
  if (e.transaction.doc_date) return Timestamp::at_midnight(*e.transaction.doc_date);
  return e.transaction.created_at;
}

}  // namespace

const Node* GraphSnapshot::node(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const TemporalEdge* GraphSnapshot::edge(EdgeId id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const TemporalEdge& e, EdgeId v) { return e.id < v; });
  return (it == edges_.end() || it->id != id) ? nullptr : &*it;
}

namespace {

template <class M, class K>
std::vector<const TemporalEdge*> collect(const std::vector<TemporalEdge>& edges, const M& index,
                                         const K& key) {
  std::vector<const TemporalEdge*> out;
  auto it = index.find(key);
  if (it == index.end()) return out;
  for (std::size_t i : it->second) out.push_back(&edges[i]);
  return out;
}

}  // namespace

std::vector<const TemporalEdge*> GraphSnapshot::edges_for_concept(ConceptId c) const {
  return collect(edges_, by_concept_, c);
}

std::vector<const TemporalEdge*> GraphSnapshot::edges_in_admission(std::string_view hadm_id) const {
  return collect(edges_, by_admission_, hadm_id);
}

std::vector<const TemporalEdge*> GraphSnapshot::edges_with_temporality(Temporality t) const {
  return collect(edges_, by_temporality_, t);
}

std::vector<const TemporalEdge*> GraphSnapshot::edges_at(const std::string& node_id) const {
  return collect(edges_, by_node_, node_id);
}

std::optional<ConceptId> GraphSnapshot::edge_concept(const TemporalEdge& e) const {
  if (const Node* t = node(e.target); t && t->concept_id) return t->concept_id;
  if (const Node* s = node(e.source); s && s->concept_id) return s->concept_id;
  return std::nullopt;
}

std::set<ConceptId> GraphSnapshot::concepts_in_admission(std::string_view hadm_id) const {
  std::set<ConceptId> out;
  for (const TemporalEdge* e : edges_in_admission(hadm_id)) {
    if (auto c = edge_concept(*e)) out.insert(*c);
  }
  return out;
}

std::vector<std::string> GraphSnapshot::admissions() const {
  std::vector<std::pair<Timestamp, std::string>> keyed;
  for (const auto& [hadm, idx] : by_admission_) {
    Timestamp earliest = transaction_key(edges_[idx.front()]);
    for (std::size_t i : idx) earliest = std::min(earliest, transaction_key(edges_[i]));
    keyed.emplace_back(earliest, hadm);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (auto& [t, h] : keyed) out.push_back(std::move(h));
  return out;
}

PatientGraph::PatientGraph(std::string patient_id) : state_(std::make_shared<GraphSnapshot>()) {
  state_->patient_id_ = std::move(patient_id);
}

void PatientGraph::set_registries(std::shared_ptr<const TypeRegistry> edge_types,
                                  std::shared_ptr<const TypeRegistry> node_types) {
  std::lock_guard lock(mu_);
  GraphSnapshot& s = writable();
  s.edge_types_ = std::move(edge_types);
  s.node_types_ = std::move(node_types);
}

GraphSnapshot& PatientGraph::writable() {
  if (state_.use_count() > 1) state_ = std::make_shared<GraphSnapshot>(*state_);
  return *state_;
}

void PatientGraph::add_node(Node node) {
  if (node.id.empty()) throw ValidationError("node id must be set");
  std::lock_guard lock(mu_);
  if (const Node* existing = state_->node(node.id)) {
    if (*existing == node) return;
    throw ValidationError("node id '" + node.id + "' already bound to different content");
  }
  if (state_->node_types_ && !state_->node_types_->contains(node.type))
    throw ValidationError("node type '" + node.type + "' is not registered");
  GraphSnapshot& s = writable();
  s.node_index_.emplace(node.id, s.nodes_.size());
  s.nodes_.push_back(std::move(node));
}

void PatientGraph::insert_edge(GraphSnapshot& s, TemporalEdge edge) {
  validate(edge);
  const Node* src = s.node(edge.source);
  const Node* dst = s.node(edge.target);
  if (!src) throw ValidationError("edge source '" + edge.source + "' is not a node");
  if (!dst) throw ValidationError("edge target '" + edge.target + "' is not a node");
  if (s.edge_types_ && !s.edge_types_->contains(edge.predicate))
    throw ValidationError("edge type '" + edge.predicate + "' is not registered");
  if (!s.edges_.empty() && !(s.edges_.back().id < edge.id))
    throw ValidationError("edge id " + std::to_string(edge.id.value) + " is not fresh");

  const std::size_t idx = s.edges_.size();
  std::set<ConceptId> concepts;
  if (src->concept_id) concepts.insert(*src->concept_id);
  if (dst->concept_id) concepts.insert(*dst->concept_id);
  for (ConceptId c : concepts) s.by_concept_[c].push_back(idx);
  if (edge.hadm_id) s.by_admission_[*edge.hadm_id].push_back(idx);
  s.by_temporality_[edge.temporality].push_back(idx);
  s.by_node_[edge.source].push_back(idx);
  if (edge.target != edge.source) s.by_node_[edge.target].push_back(idx);
  s.next_edge_id_ = std::max(s.next_edge_id_, edge.id.value + 1);
  s.edges_.push_back(std::move(edge));
}

EdgeId PatientGraph::add_edge(TemporalEdge edge) {
  std::lock_guard lock(mu_);
  edge.id = EdgeId(state_->next_edge_id_);
  validate(edge);  // fail before copying the state
  GraphSnapshot& s = writable();
  const EdgeId id = edge.id;
  insert_edge(s, std::move(edge));
  return id;
}

void PatientGraph::restore_edge(TemporalEdge edge) {
  std::lock_guard lock(mu_);
  validate(edge);
  insert_edge(writable(), std::move(edge));
}

std::shared_ptr<const GraphSnapshot> PatientGraph::snapshot() const {
  std::lock_guard lock(mu_);
  return state_;
}

std::string PatientGraph::patient_id() const {
  std::lock_guard lock(mu_);
  return state_->patient_id_;
}

std::size_t PatientGraph::edge_count() const {
  std::lock_guard lock(mu_);
  return state_->edges_.size();
}

std::size_t PatientGraph::node_count() const {
  std::lock_guard lock(mu_);
  return state_->nodes_.size();
}

bool structurally_equal(const GraphSnapshot& a, const GraphSnapshot& b) {
  return a.patient_id() == b.patient_id() && a.nodes() == b.nodes() && a.edges() == b.edges();
}

}  // namespace epikg::kgraph
