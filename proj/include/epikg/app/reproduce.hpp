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
#include <string>
#include <vector>

#include "epikg/app/commands.hpp"
#include "epikg/bench/report.hpp"

namespace epikg::app {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Comparisons reported for the fixture, baseline first.
const std::vector<bench::Comparison>& fixture_comparisons();

// The replay model's run directory name.
inline constexpr const char* kReplayModel = "extractive-reader-1";
// Frozen clock for reproducible checkpoints.
inline constexpr const char* kFixtureTimestamp = "2026-01-01T00:00:00Z";

struct ReproduceOptions {
  CliConfig cfg;
  std::filesystem::path out;          // graphs, runs and report are written here
  std::filesystem::path golden;       // expected report bytes
  std::filesystem::path questions_v2; // shipped corrected gold, compared when set
  std::filesystem::path judgements;   // deblinded adjudication fixture; optional
  std::filesystem::path cross_model;  // published per-model points; optional
  bool update_golden = false;         // write the report to `golden` instead of comparing
};

struct ReproduceResult {
  std::vector<Check> checks;
  std::string report;
  bool ok() const;
};

// Published statistics recomputed from their inputs.
std::vector<Check> published_statistic_checks();

// Ingest, run every condition against the replay corpus, score, report and
// compare with the golden file.
ReproduceResult reproduce(const ReproduceOptions& opts);

// First differing lines of two texts, "line N: -expected / +actual".
std::vector<std::string> line_diff(const std::string& expected, const std::string& actual, std::size_t max_lines = 20);

}  // namespace epikg::app
