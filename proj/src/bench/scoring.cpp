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

#include "epikg/bench/scoring.hpp"

#include <json.hpp>

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"

namespace epikg::bench {

Tally ScoredRun::overall() const {
  Tally t;
  for (const auto& i : items) {
    ++t.total;
    t.correct += i.correct ? 1 : 0;
  }
  return t;
}

std::map<std::string, Tally> ScoredRun::by_category() const {
  std::map<std::string, Tally> out;
  for (const auto& i : items) {
    ++out[i.category].total;
    out[i.category].correct += i.correct ? 1 : 0;
  }
  return out;
}

std::map<std::string, Tally> ScoredRun::by_patient() const {
  std::map<std::string, Tally> out;
  for (const auto& i : items) {
    ++out[i.patient_id].total;
    out[i.patient_id].correct += i.correct ? 1 : 0;
  }
  return out;
}

const ScoredItem* ScoredRun::find(const std::string& qid) const {
  for (const auto& i : items) {
    if (i.qid == qid) return &i;
  }
  return nullptr;
}

ScoredRun score_run(const std::vector<Prediction>& predictions, const std::vector<Question>& gold,
                    evaluator::EvaluatorVersion version, const evaluator::KeywordConfig& cfg) {
  if (predictions.empty()) throw DataError("no predictions to score");
  std::map<std::string, const Prediction*> by_qid;
  for (const auto& p : predictions) {
    if (!by_qid.emplace(p.qid, &p).second) throw DataError("qid " + p.qid + " predicted more than once");
  }
  std::set<std::string> gold_qids;
  for (const auto& q : gold) gold_qids.insert(q.qid);
  for (const auto& [qid, p] : by_qid) {
    if (!gold_qids.count(qid)) throw DataError("prediction for qid " + qid + " has no gold question");
  }
  ScoredRun run;
  run.version = version;
  run.condition = predictions.front().condition;
  run.model = predictions.front().model;
  for (const auto& q : gold) {
    auto it = by_qid.find(q.qid);
    if (it == by_qid.end()) continue;
    const Prediction& p = *it->second;
    ScoredItem item{q.qid, q.category, q.patient_id, false, false, false, {}};
    if (p.error) {
      item.errored = true;
    } else {
      const auto r = evaluator::evaluate(q.category, q.expected_answer, p.predicted_answer, version, cfg);
      item.correct = r.correct;
      item.abstention = r.abstention;
      item.matched = r.matched;
    }
    run.items.push_back(std::move(item));
  }
  return run;
}

std::vector<Prediction> restrict_predictions(const std::vector<Prediction>& predictions,
                                             const std::vector<Question>& questions) {
  std::set<std::string> keep;
  for (const auto& q : questions) keep.insert(q.qid);
  std::vector<Prediction> out;
  for (const auto& p : predictions) {
    if (keep.count(p.qid)) out.push_back(p);
  }
  return out;
}

std::string score_records_jsonl(const ScoredRun& run) {
  std::string out;
  for (const auto& i : run.items) {
    nlohmann::ordered_json j;
    j["qid"] = i.qid;
    j["condition"] = run.condition;
    j["correct"] = i.correct;
    j["abstention"] = i.abstention;
    j["matched"] = i.matched;
    out += j.dump() + "\n";
  }
  return out;
}

stats::PairedTable paired_table(const ScoredRun& first, const ScoredRun& second) {
  std::map<std::string, bool> a, b;
  for (const auto& i : first.items) a[i.qid] = i.correct;
  for (const auto& i : second.items) b[i.qid] = i.correct;
  std::vector<std::string> only_a, only_b;
  for (const auto& [q, v] : a) {
    if (!b.count(q)) only_a.push_back(q);
  }
  for (const auto& [q, v] : b) {
    if (!a.count(q)) only_b.push_back(q);
  }
  if (!only_a.empty() || !only_b.empty()) {
    std::string msg = "runs cover different questions";
    if (!only_a.empty()) msg += "; only in " + first.condition + ": " + text::join(only_a, ", ");
    if (!only_b.empty()) msg += "; only in " + second.condition + ": " + text::join(only_b, ", ");
    throw DataError(msg);
  }
  stats::PairedTable t;
  for (const auto& [q, ca] : a) {
    const bool cb = b.at(q);
    if (ca && cb) ++t.a;
    else if (ca) ++t.b;
    else if (cb) ++t.c;
    else ++t.d;
  }
  return t;
}

}  // namespace epikg::bench
