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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "epikg/bench/checkpoint.hpp"
#include "epikg/bench/question.hpp"
#include "epikg/evaluator/evaluator.hpp"
#include "epikg/stats/paired.hpp"

namespace epikg::bench {

struct ScoredItem {
  std::string qid;
  std::string category;
  std::string patient_id;
  bool correct = false;
  bool abstention = false;
  bool errored = false;
  std::vector<std::string> matched;
};

struct Tally {
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy() const { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

struct ScoredRun {
  std::string condition;
  std::string model;
  evaluator::EvaluatorVersion version = evaluator::EvaluatorVersion::V2;
  std::vector<ScoredItem> items;  // gold order

  Tally overall() const;
  std::map<std::string, Tally> by_category() const;
  std::map<std::string, Tally> by_patient() const;
  const ScoredItem* find(const std::string& qid) const;
};

// Scores every prediction against its gold question; errored predictions
// count as incorrect. DataError for no predictions, a prediction without a
// gold question, or a qid predicted twice.
ScoredRun score_run(const std::vector<Prediction>& predictions, const std::vector<Question>& gold,
                    evaluator::EvaluatorVersion version, const evaluator::KeywordConfig& cfg);

// Predictions whose qid is in `questions`.
std::vector<Prediction> restrict_predictions(const std::vector<Prediction>& predictions,
                                             const std::vector<Question>& questions);

// JSONL {qid, condition, correct, abstention, matched}.
std::string score_records_jsonl(const ScoredRun& run);

// Joins by qid; DataError naming the qids present in only one run.
stats::PairedTable paired_table(const ScoredRun& first, const ScoredRun& second);

}  // namespace epikg::bench
