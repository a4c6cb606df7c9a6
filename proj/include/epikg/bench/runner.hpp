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
#include <functional>
#include <string>
#include <vector>

#include "epikg/bench/backend.hpp"
#include "epikg/bench/checkpoint.hpp"
#include "epikg/bench/condition.hpp"
#include "epikg/bench/context.hpp"
#include "epikg/bench/question.hpp"

namespace epikg::bench {

using ContextFn = std::function<BuiltContext(const Question&)>;

struct RunOptions {
  std::filesystem::path checkpoint;
  bool resume = false;
  unsigned jobs = 1;  // concurrent backend calls
  std::string model;  // defaults to the backend identity
  const Clock* clock = nullptr;  // defaults to the system clock
};

struct RunSummary {
  std::size_t total = 0;
  std::size_t answered = 0;  // newly written this run
  std::size_t skipped = 0;   // already in the checkpoint
  std::vector<std::string> failures;  // "qid: message"
};

// Answers every question not yet in the checkpoint. Lines are written in
// question order whatever the job count, so a resumed run produces the same
// file as an uninterrupted one. Context or backend failures are recorded as
// errored predictions with an empty answer.
RunSummary run_condition(const Condition& c, const std::vector<Question>& questions,
                         const ContextFn& context, LlmBackend& backend, const RunOptions& opts);

// Checkpoint path under a run directory: <root>/<model>/<checkpoint stem>.jsonl
std::filesystem::path checkpoint_path(const std::filesystem::path& root, const std::string& model,
                                      const Condition& c);

}  // namespace epikg::bench
