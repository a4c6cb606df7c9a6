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

#include "epikg/kgraph/types.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"

namespace epikg::kgraph {

std::string_view to_string(AllenRelation r) {
  switch (r) {
    case AllenRelation::Before: return "BEFORE";
    case AllenRelation::After: return "AFTER";
    case AllenRelation::During: return "DURING";
    case AllenRelation::Contains: return "CONTAINS";
    case AllenRelation::Overlaps: return "OVERLAPS";
    case AllenRelation::Starts: return "STARTS";
    case AllenRelation::Finishes: return "FINISHES";
    case AllenRelation::Concurrent: return "CONCURRENT";
    case AllenRelation::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

AllenRelation parse_allen_relation(std::string_view s) {
  const std::string u = text::lower(text::trim(s));
  for (AllenRelation r : kAllAllenRelations) {
    if (u == text::lower(to_string(r))) return r;
  }
  throw std::invalid_argument("unknown temporal relation: " + std::string(s));
}

void validate(const TemporalEdge& e) {
  if (e.source.empty() || e.target.empty()) throw ValidationError("edge endpoints must be set");
  if (e.predicate.empty()) throw ValidationError("edge predicate must be set");
  if (!(e.confidence >= 0.0 && e.confidence <= 1.0)) {
    std::ostringstream os;
    os << "edge confidence " << e.confidence << " outside [0, 1]";
    throw ValidationError(os.str());
  }
  if (e.valid.valid_from && e.valid.valid_to && *e.valid.valid_from > *e.valid.valid_to)
    throw ValidationError("valid_from " + e.valid.valid_from->iso() + " is after valid_to " +
                          e.valid.valid_to->iso());
}

TypeRegistry::TypeRegistry(std::vector<std::string> names) : names_(std::move(names)) {
  for (const auto& n : names_) {
    if (!lookup_.insert(n).second) throw ValidationError("duplicate registry entry '" + n + "'");
  }
}

TypeRegistry TypeRegistry::parse(std::string_view content, const std::string& source) {
  std::vector<std::string> names;
  const auto lines = text::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = text::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    std::string_view name = text::trim(line.substr(0, line.find('|')));
    if (name.empty()) throw ParseError(source, i + 1, "empty type name");
    names.emplace_back(name);
  }
  try {
    return TypeRegistry(std::move(names));
  } catch (const ValidationError& e) {
    throw ParseError(source, 0, e.what());
  }
}

TypeRegistry TypeRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open type registry " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

bool TypeRegistry::contains(std::string_view name) const { return lookup_.find(name) != lookup_.end(); }

}  // namespace epikg::kgraph
