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

#include "epikg/epistemics/labels.hpp"

#include <stdexcept>

#include "epikg/core/text.hpp"

namespace epikg::epistemics {
namespace {

std::string normalise(std::string_view s) {
  std::string out = text::lower(text::trim(s));
  for (char& c : out) {
    if (c == ' ' || c == '-') c = '_';
  }
  return out;
}

}  // namespace

std::string_view to_string(Assertion a) {
  switch (a) {
    case Assertion::Present: return "PRESENT";
    case Assertion::Absent: return "ABSENT";
    case Assertion::Possible: return "POSSIBLE";
    case Assertion::Conditional: return "CONDITIONAL";
    case Assertion::Hypothetical: return "HYPOTHETICAL";
    case Assertion::FamilyHistory: return "FAMILY_HISTORY";
    case Assertion::Historical: return "HISTORICAL";
  }
  return "PRESENT";
}

std::string_view to_string(Temporality t) {
  switch (t) {
    case Temporality::Past: return "PAST";
    case Temporality::Current: return "CURRENT";
    case Temporality::Future: return "FUTURE";
  }
  return "CURRENT";
}

std::string_view to_string(Experiencer e) {
  return e == Experiencer::Family ? "FAMILY" : "PATIENT";
}

Assertion parse_assertion(std::string_view s) {
  const std::string n = normalise(s);
  for (Assertion a : kAllAssertions) {
    if (n == text::lower(to_string(a))) return a;
  }
  if (n == "familyhistory") return Assertion::FamilyHistory;
  if (n == "uncertain") return Assertion::Possible;
  throw std::invalid_argument("unknown assertion label: " + std::string(s));
}

Temporality parse_temporality(std::string_view s) {
  const std::string n = normalise(s);
  for (Temporality t : kAllTemporalities) {
    if (n == text::lower(to_string(t))) return t;
  }
  throw std::invalid_argument("unknown temporality: " + std::string(s));
}

Experiencer parse_experiencer(std::string_view s) {
  const std::string n = normalise(s);
  for (Experiencer e : kAllExperiencers) {
    if (n == text::lower(to_string(e))) return e;
  }
  throw std::invalid_argument("unknown experiencer: " + std::string(s));
}

std::string_view inventory_category(Assertion a) {
  switch (a) {
    case Assertion::Present: return "Present";
    case Assertion::Absent: return "Absent";
    case Assertion::Possible: return "Uncertain";
    case Assertion::Conditional: return "Conditional";
    case Assertion::Hypothetical: return "Hypothetical";
    case Assertion::FamilyHistory: return "FamilyHistory";
    case Assertion::Historical: return "Historical";
  }
  return "Present";
}

}  // namespace epikg::epistemics
