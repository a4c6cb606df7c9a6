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

#include "epikg/kgraph/allen.hpp"

#include <stdexcept>

namespace epikg::kgraph {

std::string_view to_string(AllenBase r) {
  switch (r) {
    case AllenBase::Before: return "before";
    case AllenBase::Meets: return "meets";
    case AllenBase::Overlaps: return "overlaps";
    case AllenBase::Starts: return "starts";
    case AllenBase::During: return "during";
    case AllenBase::Finishes: return "finishes";
    case AllenBase::Equals: return "equals";
    case AllenBase::FinishedBy: return "finished-by";
    case AllenBase::Contains: return "contains";
    case AllenBase::StartedBy: return "started-by";
    case AllenBase::OverlappedBy: return "overlapped-by";
    case AllenBase::MetBy: return "met-by";
    case AllenBase::After: return "after";
  }
  return "equals";
}

AllenBase allen_base(long long as, long long ae, long long bs, long long be) {
  if (as > ae || bs > be) throw std::domain_error("interval start after end");
  if (as == bs && ae == be) return AllenBase::Equals;
  if (as == bs) return ae < be ? AllenBase::Starts : AllenBase::StartedBy;
  if (ae == be) return as > bs ? AllenBase::Finishes : AllenBase::FinishedBy;
  if (ae < bs) return AllenBase::Before;
  if (as > be) return AllenBase::After;
  if (ae == bs) return AllenBase::Meets;
  if (as == be) return AllenBase::MetBy;
  if (as > bs && ae < be) return AllenBase::During;
  if (as < bs && ae > be) return AllenBase::Contains;
  return as < bs ? AllenBase::Overlaps : AllenBase::OverlappedBy;
}

AllenRelation merge(AllenBase r) {
  switch (r) {
    case AllenBase::Before:
    case AllenBase::Meets: return AllenRelation::Before;
    case AllenBase::After:
    case AllenBase::MetBy: return AllenRelation::After;
    case AllenBase::During: return AllenRelation::During;
    case AllenBase::Contains: return AllenRelation::Contains;
    case AllenBase::Overlaps:
    case AllenBase::OverlappedBy: return AllenRelation::Overlaps;
    case AllenBase::Starts:
    case AllenBase::StartedBy: return AllenRelation::Starts;
    case AllenBase::Finishes:
    case AllenBase::FinishedBy: return AllenRelation::Finishes;
    case AllenBase::Equals: return AllenRelation::Concurrent;
  }
  return AllenRelation::Unknown;
}

AllenRelation allen_relation(const Interval& a, const Interval& b) {
  if (a.start && a.end && *a.start > *a.end) throw std::domain_error("interval start after end");
  if (b.start && b.end && *b.start > *b.end) throw std::domain_error("interval start after end");
  if (!a.start || !a.end || !b.start || !b.end) return AllenRelation::Unknown;
  return merge(allen_base(*a.start, *a.end, *b.start, *b.end));
}

Interval to_interval(const ValidTime& v) {
  Interval i;
  if (v.valid_from) i.start = v.valid_from->days_since_epoch();
  if (v.valid_to) i.end = v.valid_to->days_since_epoch();
  return i;
}

}  // namespace epikg::kgraph
