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

#include <set>
#include <string>
#include <vector>

#include "epikg/kgraph/graph.hpp"

namespace epikg::kgraph {

inline constexpr double kMinTraversalConfidence = 0.3;

struct TraversalOptions {
  int max_hops = 2;
  double min_confidence = kMinTraversalConfidence;
  // Nodes of these types are reached but never expanded, so a patient hub
  // does not pull every fact into a two-hop neighbourhood.
  std::set<std::string> non_expanding_types = {"Patient"};
};

// Undirected BFS from the nodes carrying `seeds`. Returns the edges met
// within max_hops, ascending by id; edges below min_confidence are neither
// returned nor crossed. Throws std::invalid_argument when max_hops < 1.
std::vector<EdgeId> bfs_traverse(const GraphSnapshot& g, const std::set<ConceptId>& seeds,
                                 const TraversalOptions& options = {});

inline constexpr double kRelevantTypeBonus = 0.2;
inline constexpr double kCurrentBonus = 0.1;

// c + 0.2 [predicate relevant] + 0.1 [temporality Current]; in [0, 1.3].
double score_edge(const TemporalEdge& e, const std::set<std::string>& relevant_types);

}  // namespace epikg::kgraph
