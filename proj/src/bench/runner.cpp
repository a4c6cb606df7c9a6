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

#include "epikg/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace epikg::bench {

std::filesystem::path checkpoint_path(const std::filesystem::path& root, const std::string& model,
                                      const Condition& c) {
  return root / model / (c.checkpoint + ".jsonl");
}

RunSummary run_condition(const Condition& c, const std::vector<Question>& questions,
                         const ContextFn& context, LlmBackend& backend, const RunOptions& opts) {
  static const SystemClock kSystem;
  const Clock& clock = opts.clock ? *opts.clock : kSystem;
  const std::string model = opts.model.empty() ? backend.identity() : opts.model;

  CheckpointWriter writer(opts.checkpoint, opts.resume);
  RunSummary summary;
  summary.total = questions.size();

  std::vector<const Question*> todo;
  for (const auto& q : questions) {
    if (writer.done().count(q.qid)) {
      ++summary.skipped;
    } else {
      todo.push_back(&q);
    }
  }

  auto answer = [&](const Question& q) {
    Prediction p;
    p.qid = q.qid;
    p.condition = c.name;
    p.model = model;
    const std::int64_t start = clock.monotonic_ms();
    try {
      BuiltContext ctx = context(q);
      p.evidence = ctx.evidence;
      p.predicted_answer = ctx.deterministic ? ctx.answer : backend.generate(ctx.prompt);
    } catch (const std::exception& e) {
      p.predicted_answer.clear();
      p.error = e.what();
    }
    p.elapsed_ms = clock.monotonic_ms() - start;
    p.ts = clock.now().iso();
    return p;
  };

  // Results are committed strictly in order; workers park finished items
  // until their predecessors are written.
  std::mutex mu;
  std::map<std::size_t, Prediction> ready;
  std::size_t next_commit = 0;
  std::atomic<std::size_t> next_task{0};
  auto commit_ready = [&] {
    for (auto it = ready.find(next_commit); it != ready.end(); it = ready.find(next_commit)) {
      if (it->second.error) summary.failures.push_back(it->second.qid + ": " + *it->second.error);
      writer.append(it->second);
      ++summary.answered;
      ready.erase(it);
      ++next_commit;
    }
  };
  auto worker = [&] {
    for (std::size_t i = next_task++; i < todo.size(); i = next_task++) {
      Prediction p = answer(*todo[i]);
      std::lock_guard lock(mu);
      ready.emplace(i, std::move(p));
      commit_ready();
    }
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1 || todo.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs && t < todo.size(); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return summary;
}

}  // namespace epikg::bench
