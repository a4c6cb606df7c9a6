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

#include "epikg/kgraph/traversal.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace epikg::kgraph {

std::vector<EdgeId> bfs_traverse(const GraphSnapshot& g, const std::set<ConceptId>& seeds,
                                 const TraversalOptions& options) {
  if (options.max_hops < 1) throw std::invalid_argument("max_hops must be at least 1");
  std::unordered_set<std::string> visited;
  std::vector<std::string> frontier;
  for (const Node& n : g.nodes()) {
    if (n.concept_id && seeds.count(*n.concept_id)) {
      visited.insert(n.id);
      frontier.push_back(n.id);
    }
  }
  std::set<EdgeId> found;
  for (int hop = 0; hop < options.max_hops && !frontier.empty(); ++hop) {
    std::vector<std::string> next;
    for (const std::string& id : frontier) {
      const Node* here = g.node(id);
      if (hop > 0 && here && options.non_expanding_types.count(here->type)) continue;
      for (const TemporalEdge* e : g.edges_at(id)) {
        if (e->confidence < options.min_confidence) continue;
        found.insert(e->id);
        const std::string& other = e->source == id ? e->target : e->source;
        if (visited.insert(other).second) next.push_back(other);
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

double score_edge(const TemporalEdge& e, const std::set<std::string>& relevant_types) {
  double s = e.confidence;
  if (relevant_types.count(e.predicate)) s += kRelevantTypeBonus;
  if (e.temporality == Temporality::Current) s += kCurrentBonus;
  return s;
}

}  // namespace epikg::kgraph
