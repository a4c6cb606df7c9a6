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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epikg::bench {

struct Question {
  std::string qid;
  std::string task;  // "A" or "B"
  std::string category;
  std::string patient_id;
  std::vector<std::string> admission_ids;
  std::string question;
  std::string expected_answer;
  std::optional<std::string> section;
  std::string gold_version = "v1";
};

bool is_known_category(std::string_view category);

// One JSON object per line; blank lines are skipped. Throws ParseError for a
// malformed line and DataError for an unknown category, a bad task or a
// duplicate qid (the message names the qid).
std::vector<Question> parse_questions(std::string_view jsonl, const std::string& source);
std::vector<Question> load_questions(const std::filesystem::path& path);

std::string to_jsonl(const Question& q);

std::map<std::string, std::size_t> category_histogram(const std::vector<Question>& qs);

// qid -> corrected expected_answer.
using Corrections = std::map<std::string, std::string>;
Corrections load_corrections(const std::filesystem::path& path);

// Replaces expected answers for corrected qids and tags every question with
// `version`. DataError when a correction names an unknown qid.
std::vector<Question> apply_corrections(std::vector<Question> qs, const Corrections& corrections,
                                        const std::string& version = "v2");

struct ExclusionList {
  std::vector<std::string> qids;
  bool exclude_change = false;
};

// JSON {"exclude_change": bool, "qids": [...]}.
ExclusionList load_exclusions(const std::filesystem::path& path);

struct ExclusionResult {
  std::vector<Question> kept;
  std::size_t removed_change = 0;
  std::size_t removed_listed = 0;  // listed qids outside the change category
  std::vector<std::string> unknown_qids;
};

ExclusionResult apply_exclusions(const std::vector<Question>& qs, const ExclusionList& list);

}  // namespace epikg::bench
