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

#include <optional>
#include <string>
#include <vector>

#include "epikg/bench/scoring.hpp"
#include "epikg/stats/bootstrap.hpp"
#include "epikg/stats/paired.hpp"
#include "epikg/stats/regression.hpp"

namespace epikg::bench {

struct RunInput {
  ScoredRun run;
  std::string checkpoint;  // relative "model/C1_llm_alone.jsonl"
  std::string sha256;      // of the checkpoint bytes
  std::size_t records = 0;
};

struct Comparison {
  std::string first;   // condition name, the baseline
  std::string second;
  std::string name() const { return second + "_vs_" + first; }
};

struct ComparisonResult {
  Comparison comparison;
  stats::PairedTable table;
  double mcnemar_exact_p = 1.0;
  std::optional<stats::ChiSquareResult> chi2;  // absent without discordant pairs
  stats::PairedDifference newcombe;
  stats::BootstrapResult bootstrap;  // second - first accuracy, patient clusters
  double q_bh = 1.0;
  double q_by = 1.0;
};

struct ReportOptions {
  stats::BootstrapOptions bootstrap;
  std::string evaluator = "v2";
  std::string gold_version = "v2";
};

// Both runs must cover the same qids. BH and BY are applied across all
// comparisons passed together.
std::vector<ComparisonResult> compare_runs(const std::vector<RunInput>& runs,
                                           const std::vector<Comparison>& comparisons,
                                           const ReportOptions& opts);

// Deblinded adjudication rating reduced to what leave-rater-out needs.
struct RaterJudgement {
  std::string item_id;
  std::string rater_id;
  std::string condition;
  bool strict_correct = false;  // model answer rated fully correct
};

struct LeaveRaterOut {
  std::string excluded_rater;
  Comparison comparison;
  stats::PairedTable table;
  std::size_t items_considered = 0;
  std::size_t items_unanimous = 0;
  double mcnemar_exact_p = 1.0;
  stats::PairedDifference newcombe;
};

// Paired table over the items where every retained rater judged both
// conditions and the retained raters agree on each condition.
LeaveRaterOut leave_rater_out(const std::vector<RaterJudgement>& judgements, const std::string& excluded_rater,
                              const Comparison& comparison);

struct CrossModelPoint {
  std::string model;
  double baseline_pct = 0.0;  // C1 accuracy
  double delta_pct = 0.0;     // routed minus baseline
};

struct ReportInput {
  std::vector<RunInput> runs;
  std::vector<Comparison> comparisons;
  std::size_t questions = 0;
  std::size_t excluded_change = 0;
  std::size_t excluded_listed = 0;
  std::vector<LeaveRaterOut> leave_rater_out;
  std::vector<CrossModelPoint> cross_model;  // regression row when >= 3 points
};

// Canonical JSON report, two-space indented with a trailing newline. Every
// float is rounded to six decimals so identical inputs give identical bytes.
std::string render_report(const ReportInput& input, const ReportOptions& opts);

double round6(double v);

}  // namespace epikg::bench
