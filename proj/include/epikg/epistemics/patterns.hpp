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

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "epikg/epistemics/labels.hpp"

namespace epikg::epistemics {

enum class LabelKind { Assertion, Temporality, Experiencer };
enum class ScopeDirection { Pre, Post, Bidirectional };

using TriggerLabel = std::variant<Assertion, Temporality, Experiencer>;

inline constexpr int kDefaultScopeWindow = 6;

struct TriggerPattern {
  std::string surface;              // as written in the inventory
  std::vector<std::string> tokens;  // lowercased token sequence
  TriggerLabel label;
  double confidence = 0.0;
  ScopeDirection direction = ScopeDirection::Pre;
  int window = kDefaultScopeWindow;

  LabelKind kind() const { return static_cast<LabelKind>(label.index()); }
};

std::string_view to_string(LabelKind k);
std::string_view to_string(ScopeDirection d);
std::string label_string(const TriggerLabel& label);  // e.g. "assertion:absent"

struct ConfidenceRange {
  double lo;
  double hi;
};

// Per-category confidence range and pattern count of the published
// 122-pattern inventory.
ConfidenceRange published_range(Assertion a);
std::size_t published_count(Assertion a);
inline constexpr std::size_t kPublishedInventorySize = 122;

// Immutable, validated trigger inventory. Built once and then shared
// read-only between classifier calls.
class PatternInventory {
 public:
  PatternInventory() = default;
  explicit PatternInventory(std::vector<TriggerPattern> patterns);

  // Dispatches on content: a document whose first non-space byte is '['
  // is parsed as JSON, anything else as the line format
  //
  //   pattern | kind:label | confidence [| pre|post|bidirectional [| window]]
  //
  // with '#' comments. Errors are ParseError("<source>:<line>: ...").
  static PatternInventory parse(std::string_view content, const std::string& source);
  static PatternInventory load(const std::filesystem::path& path);

  const std::vector<TriggerPattern>& patterns() const { return patterns_; }
  bool empty() const { return patterns_.empty(); }
  std::size_t size() const { return patterns_.size(); }

  // Assertion categories keyed by their published names (Absent, Uncertain,
  // ...); temporality and experiencer triggers keyed "temporality:past" etc.
  std::map<std::string, std::size_t> category_counts() const;

  // True when every assertion category reaches its published count.
  bool matches_published_totals() const;

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<TriggerPattern> patterns_;
  std::vector<std::string> warnings_;
};

// Validates one pattern; returns an error message or nullopt.
std::optional<std::string> validate(const TriggerPattern& p);

}  // namespace epikg::epistemics
