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
#include <string_view>

#include "epikg/kgraph/types.hpp"

namespace epikg::kgraph {

// Closed interval on an integer time axis (days for graph edges). Either
// endpoint may be unknown.
struct Interval {
  std::optional<long long> start;
  std::optional<long long> end;
};

// Allen's thirteen base relations.
enum class AllenBase {
  Before,
  Meets,
  Overlaps,
  Starts,
  During,
  Finishes,
  Equals,
  FinishedBy,
  Contains,
  StartedBy,
  OverlappedBy,
  MetBy,
  After,
};

std::string_view to_string(AllenBase r);

// Throws std::domain_error when start > end. Zero-length intervals are
// resolved in the order Equals, Starts/Started-by, Finishes/Finished-by,
// Before/After, Meets/Met-by, During/Contains, Overlaps/Overlapped-by.
AllenBase allen_base(long long as, long long ae, long long bs, long long be);

// Merge of a base relation onto the nine stored values.
AllenRelation merge(AllenBase r);

// Unknown when any endpoint is missing.
AllenRelation allen_relation(const Interval& a, const Interval& b);

Interval to_interval(const ValidTime& v);

}  // namespace epikg::kgraph
