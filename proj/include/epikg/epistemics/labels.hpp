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

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "epikg/core/ids.hpp"

namespace epikg::epistemics {

// Seven-value assertion taxonomy. Historical and FamilyHistory are distinct
// classes (i2b2 folds them together).
enum class Assertion {
  Present,
  Absent,
  Possible,
  Conditional,
  Hypothetical,
  FamilyHistory,
  Historical,
};

enum class Temporality { Past, Current, Future };

enum class Experiencer { Patient, Family };

inline constexpr std::array kAllAssertions = {
    Assertion::Present,      Assertion::Absent,        Assertion::Possible,
    Assertion::Conditional,  Assertion::Hypothetical,  Assertion::FamilyHistory,
    Assertion::Historical,
};
inline constexpr std::array kAllTemporalities = {Temporality::Past, Temporality::Current,
                                                 Temporality::Future};
inline constexpr std::array kAllExperiencers = {Experiencer::Patient, Experiencer::Family};

inline constexpr std::size_t kAssertionCount = kAllAssertions.size();

constexpr std::size_t index_of(Assertion a) { return static_cast<std::size_t>(a); }

// Canonical wire names: PRESENT, ABSENT, POSSIBLE, CONDITIONAL, HYPOTHETICAL,
// FAMILY_HISTORY, HISTORICAL / PAST, CURRENT, FUTURE / PATIENT, FAMILY.
std::string_view to_string(Assertion a);
std::string_view to_string(Temporality t);
std::string_view to_string(Experiencer e);

// Case-insensitive; accepts '_' or ' ' in FAMILY_HISTORY. Throws
// std::invalid_argument for anything outside the closed set.
Assertion parse_assertion(std::string_view s);
Temporality parse_temporality(std::string_view s);
Experiencer parse_experiencer(std::string_view s);

// Category name used by the published trigger inventory ("Uncertain" for
// Possible, "FamilyHistory" for FamilyHistory, ...).
std::string_view inventory_category(Assertion a);

// The (c, alpha, xi, tau) projection of a mention or edge.
struct EpistemicState {
  ConceptId concept_id;
  Assertion assertion = Assertion::Present;
  Experiencer experiencer = Experiencer::Patient;
  Temporality temporality = Temporality::Current;

  bool operator==(const EpistemicState&) const = default;
};

}  // namespace epikg::epistemics
