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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "epikg/core/dates.hpp"
#include "epikg/core/ids.hpp"
#include "epikg/epistemics/labels.hpp"

namespace epikg::kgraph {

using epistemics::Assertion;
using epistemics::Experiencer;
using epistemics::Temporality;

struct Node {
  std::string id;
  std::optional<ConceptId> concept_id;
  std::string label;
  std::string type;

  bool operator==(const Node&) const = default;
};

struct ValidTime {
  std::optional<Date> event_date;
  std::optional<Date> valid_from;
  std::optional<Date> valid_to;  // absent = open validity

  bool open() const { return !valid_to.has_value(); }
  bool operator==(const ValidTime&) const = default;
};

struct TransactionTime {
  std::optional<Timestamp> recorded_at;
  std::optional<Date> doc_date;
  Timestamp created_at;

  bool operator==(const TransactionTime&) const = default;
};

enum class AllenRelation {
  Before,
  After,
  During,
  Contains,
  Overlaps,
  Starts,
  Finishes,
  Concurrent,
  Unknown,
};

inline constexpr AllenRelation kAllAllenRelations[] = {
    AllenRelation::Before,   AllenRelation::After,    AllenRelation::During,
    AllenRelation::Contains, AllenRelation::Overlaps, AllenRelation::Starts,
    AllenRelation::Finishes, AllenRelation::Concurrent, AllenRelation::Unknown,
};

std::string_view to_string(AllenRelation r);
AllenRelation parse_allen_relation(std::string_view s);

struct TemporalEdge {
  EdgeId id;  // assigned by PatientGraph::add_edge
  std::string source;
  std::string predicate;
  std::string target;
  Assertion assertion = Assertion::Present;
  ValidTime valid;
  TransactionTime transaction;
  Temporality temporality = Temporality::Current;
  AllenRelation relation = AllenRelation::Unknown;
  double confidence = 1.0;
  Experiencer experiencer = Experiencer::Patient;
  std::optional<std::string> hadm_id;
  std::string provenance;  // source document id

  bool operator==(const TemporalEdge&) const = default;
};

// Checks the field-level invariants; node existence is the graph's job.
// Throws ValidationError.
void validate(const TemporalEdge& e);

// Closed list of allowed names read from a file with one name per line,
// '#' comments and optional "name | description" lines.
class TypeRegistry {
 public:
  TypeRegistry() = default;
  explicit TypeRegistry(std::vector<std::string> names);
  static TypeRegistry load(const std::filesystem::path& path);
  static TypeRegistry parse(std::string_view content, const std::string& source);

  bool contains(std::string_view name) const;
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::set<std::string, std::less<>> lookup_;
};

}  // namespace epikg::kgraph
