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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace epikg::evaluator {

inline constexpr const char* kCategories[] = {
    "negation", "conditional", "uncertainty", "family_history", "sequence",
    "current_state", "duration", "historical", "change",
};

struct CategoryRule {
  // Category-defining keywords. For keyword-only categories any hit is a
  // correct answer; the gold answer is never read.
  std::vector<std::string> keywords;
  bool consults_gold = false;
  // v2 only: at least one of these must also appear (ordering words for
  // sequence, change words for change).
  std::vector<std::string> v2_required;
};

struct KeywordConfig {
  std::map<std::string, CategoryRule> categories;
  std::vector<std::string> temporal;
  std::vector<std::string> abstention;
  std::vector<std::string> claim;
  std::vector<std::string> stopwords;
  // Fraction of distinct gold content words a prediction must contain in a
  // gold-consulting category.
  double gold_coverage = 0.5;

  // Throws ConfigError if any of the nine categories is missing.
  static KeywordConfig parse(std::string_view json_text, const std::string& source);
  static KeywordConfig load(const std::filesystem::path& path);

  const CategoryRule& rule(const std::string& category) const;  // ConfigError if unknown
};

}  // namespace epikg::evaluator
