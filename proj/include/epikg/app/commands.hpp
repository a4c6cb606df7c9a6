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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epikg/bench/backend.hpp"
#include "epikg/bench/condition.hpp"
#include "epikg/bench/context.hpp"
#include "epikg/bench/corpus.hpp"
#include "epikg/bench/question.hpp"
#include "epikg/bench/report.hpp"
#include "epikg/bench/runner.hpp"
#include "epikg/bench/scoring.hpp"
#include "epikg/epistemics/lexicon.hpp"
#include "epikg/epistemics/patterns.hpp"
#include "epikg/evaluator/keywords.hpp"
#include "epikg/kgraph/graph.hpp"
#include "epikg/kgraph/materialize.hpp"
#include "epikg/kgraph/types.hpp"
#include "epikg/router/evidence.hpp"
#include "epikg/router/intent.hpp"

namespace epikg::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,  // bad flags or configuration
  kExitData = 3,   // unreadable or inconsistent input data
  kExitCheck = 4,  // a reproduction check failed
};

struct CliConfig {
  std::filesystem::path triggers;
  std::filesystem::path vocabulary;
  std::filesystem::path edge_types;
  std::filesystem::path node_types;
  std::filesystem::path keywords;
  std::filesystem::path rules;
  std::filesystem::path templates;
  std::filesystem::path corpus;
  std::filesystem::path questions;    // v1 gold
  std::filesystem::path corrections;  // empty: no corrections
  std::filesystem::path exclusions;   // empty: keep everything
  std::filesystem::path graphs;       // ingest output; empty: build in memory
  std::filesystem::path runs;
  std::filesystem::path replay;
  std::string gold_version = "v2";
  std::string evaluator = "v2";
  std::uint64_t seed = 42;
  std::size_t resamples = 2000;
  unsigned jobs = 1;
};

// Paths into a data directory laid out like the shipped one; run output goes
// under `out`.
CliConfig default_config(const std::filesystem::path& data_dir, const std::filesystem::path& out);

// Overrides from a JSON object whose keys are CliConfig field names. Relative
// paths resolve against the config file's directory. ConfigError on unknown
// keys or wrong types.
void apply_config_file(CliConfig& cfg, const std::filesystem::path& path);

// ConfigError naming the first input path that does not exist.
void check_inputs(const CliConfig& cfg, bool need_corpus);

struct Workspace {
  epistemics::PatternInventory inventory;
  epistemics::Lexicon lexicon;
  router::IntentRuleSet rules;
  router::TemplateSet templates;
  evaluator::KeywordConfig keywords;
  std::shared_ptr<const kgraph::TypeRegistry> edge_types;
  std::shared_ptr<const kgraph::TypeRegistry> node_types;
  bench::Corpus corpus;
  std::vector<std::string> corpus_errors;
  std::map<std::string, std::shared_ptr<const kgraph::GraphSnapshot>> graphs;

  bench::BenchResources resources() const;
  bench::PatientData patient(const std::string& patient_id) const;
};

// Loads every resource. Graphs come from cfg.graphs when it holds graph
// files and are otherwise materialized from the corpus.
Workspace load_workspace(const CliConfig& cfg);

struct PatientIngest {
  std::string patient_id;
  std::size_t documents = 0;
  std::size_t mentions = 0;
  std::size_t edges = 0;
  std::size_t non_present = 0;
  std::vector<kgraph::PreservationViolation> violations;
};

struct IngestResult {
  std::vector<PatientIngest> patients;
  std::vector<std::string> errors;  // per-file corpus errors
  std::map<std::string, std::shared_ptr<const kgraph::GraphSnapshot>> graphs;
};

IngestResult ingest(const bench::Corpus& corpus, const epistemics::Lexicon& lexicon,
                    const epistemics::PatternInventory& inventory,
                    std::shared_ptr<const kgraph::TypeRegistry> edge_types,
                    std::shared_ptr<const kgraph::TypeRegistry> node_types);

// One <patient>.json per patient.
void write_graphs(const IngestResult& r, const std::filesystem::path& dir);

// v1 questions with the corrections applied when gold_version is "v2".
std::vector<bench::Question> load_gold(const CliConfig& cfg);

// The endpoint subset: exclusions applied when cfg.exclusions is set.
bench::ExclusionResult endpoint_questions(const CliConfig& cfg, const std::vector<bench::Question>& gold);

bench::ContextFn make_context(const Workspace& ws, const bench::Condition& c);

// Prompts the extractive reader would see for every question under every
// non-deterministic condition, answered by it.
std::vector<bench::ReplayRecord> make_replay(const Workspace& ws, const std::vector<bench::Question>& questions,
                                             unsigned jobs);

// Scores the checkpoint of each condition under cfg.runs/<model>/.
std::vector<bench::RunInput> score_runs(const CliConfig& cfg, const Workspace& ws,
                                        const std::vector<bench::Question>& gold, const std::string& model,
                                        const std::vector<std::string>& conditions);

// Deblinded adjudication rows, JSONL {item_id, rater_id, condition,
// model_correctness}. Strict correctness is model_correctness == "correct".
std::vector<bench::RaterJudgement> load_judgements(const std::filesystem::path& path);

// JSON [{model, baseline_pct, delta_pct}].
std::vector<bench::CrossModelPoint> load_cross_model(const std::filesystem::path& path);

// Plain-text accuracy table, one row per category and a total.
std::string accuracy_table(const bench::ScoredRun& run);

}  // namespace epikg::app
