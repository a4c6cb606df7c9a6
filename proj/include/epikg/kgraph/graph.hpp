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
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "epikg/kgraph/types.hpp"

namespace epikg::kgraph {

// Immutable view of a patient graph. Everything routing and traversal read
// goes through a snapshot, so readers never see a half-applied mutation.
class GraphSnapshot {
 public:
  const std::string& patient_id() const { return patient_id_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<TemporalEdge>& edges() const { return edges_; }  // ascending id

  const Node* node(std::string_view id) const;
  const TemporalEdge* edge(EdgeId id) const;

  // Edges touching a node that carries this concept, ascending id.
  std::vector<const TemporalEdge*> edges_for_concept(ConceptId c) const;
  std::vector<const TemporalEdge*> edges_in_admission(std::string_view hadm_id) const;
  std::vector<const TemporalEdge*> edges_with_temporality(Temporality t) const;
  std::vector<const TemporalEdge*> edges_at(const std::string& node_id) const;

  // Concept carried by the edge's target node, falling back to the source.
  std::optional<ConceptId> edge_concept(const TemporalEdge& e) const;

  // Distinct target concepts of edges tagged with the admission; empty for
  // an unknown admission.
  std::set<ConceptId> concepts_in_admission(std::string_view hadm_id) const;

  // Admission ids ordered by earliest transaction time, ties by id.
  std::vector<std::string> admissions() const;

  const TypeRegistry* edge_types() const { return edge_types_.get(); }
  const TypeRegistry* node_types() const { return node_types_.get(); }

 private:
  friend class PatientGraph;

  std::string patient_id_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::vector<TemporalEdge> edges_;
  std::map<ConceptId, std::vector<std::size_t>> by_concept_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_admission_;
  std::map<Temporality, std::vector<std::size_t>> by_temporality_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_node_;
  std::shared_ptr<const TypeRegistry> edge_types_;
  std::shared_ptr<const TypeRegistry> node_types_;
  std::uint64_t next_edge_id_ = 1;
};

// Single-writer, multi-reader patient graph. Mutations are serialized;
// snapshot() hands out the current state, and a later mutation copies it
// first if any snapshot is still alive.
class PatientGraph {
 public:
  explicit PatientGraph(std::string patient_id = {});

  // With registries set, node and edge types outside them are rejected.
  void set_registries(std::shared_ptr<const TypeRegistry> edge_types,
                      std::shared_ptr<const TypeRegistry> node_types);

  // Inserting an existing id with identical content is a no-op; different
  // content under the same id is a ValidationError.
  void add_node(Node node);

  // Throws ValidationError on invariant violations or dangling endpoints.
  // The id field of `edge` is ignored and freshly assigned.
  EdgeId add_edge(TemporalEdge edge);

  // Restores an edge with its persisted id (loading). Ids must be unused.
  void restore_edge(TemporalEdge edge);

  std::shared_ptr<const GraphSnapshot> snapshot() const;

  std::string patient_id() const;
  std::size_t edge_count() const;
  std::size_t node_count() const;

 private:
  GraphSnapshot& writable();
  void insert_edge(GraphSnapshot& s, TemporalEdge edge);

  mutable std::mutex mu_;
  std::shared_ptr<GraphSnapshot> state_;
};

bool structurally_equal(const GraphSnapshot& a, const GraphSnapshot& b);

}  // namespace epikg::kgraph
