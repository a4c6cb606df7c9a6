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

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace epikg {

// OMOP-style integer concept identifier.
struct ConceptId {
  std::int64_t value = 0;

  constexpr ConceptId() = default;
  constexpr explicit ConceptId(std::int64_t v) : value(v) {}
  auto operator<=>(const ConceptId&) const = default;
};

struct EdgeId {
  std::uint64_t value = 0;

  constexpr EdgeId() = default;
  constexpr explicit EdgeId(std::uint64_t v) : value(v) {}
  auto operator<=>(const EdgeId&) const = default;
};

inline std::string to_string(ConceptId id) { return std::to_string(id.value); }

}  // namespace epikg

template <>
struct std::hash<epikg::ConceptId> {
  std::size_t operator()(const epikg::ConceptId& id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};

template <>
struct std::hash<epikg::EdgeId> {
  std::size_t operator()(const epikg::EdgeId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};
