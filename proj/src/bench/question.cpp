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

#include "epikg/bench/question.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"
#include "epikg/evaluator/keywords.hpp"

namespace epikg::bench {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string field(const json& j, const char* key, const std::string& source, std::size_t line) {
  if (!j.contains(key) || !j[key].is_string())
    throw ParseError(source, line, std::string("missing string field '") + key + "'");
  return j[key].get<std::string>();
}

}  // namespace

bool is_known_category(std::string_view category) {
  for (const char* c : evaluator::kCategories) {
    if (category == c) return true;
  }
  return false;
}

std::vector<Question> parse_questions(std::string_view jsonl, const std::string& source) {
  std::vector<Question> out;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  for (const std::string& raw : text::split_lines(jsonl)) {
    ++lineno;
    if (text::trim(raw).empty()) continue;
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(source, lineno, "expected a JSON object");
    Question q;
    q.qid = field(j, "qid", source, lineno);
    q.task = j.value("task", std::string("B"));
    q.category = field(j, "category", source, lineno);
    q.patient_id = field(j, "patient_id", source, lineno);
    q.question = field(j, "question", source, lineno);
    q.expected_answer = field(j, "expected_answer", source, lineno);
    if (j.contains("admission_ids")) {
      for (const auto& a : j["admission_ids"]) q.admission_ids.push_back(a.get<std::string>());
    }
    if (j.contains("section") && j["section"].is_string()) q.section = j["section"].get<std::string>();
    q.gold_version = j.value("gold_version", std::string("v1"));
    if (!is_known_category(q.category))
      throw DataError(source + ":" + std::to_string(lineno) + ": question " + q.qid +
                      " has unknown category '" + q.category + "'");
    if (q.task != "A" && q.task != "B")
      throw DataError(source + ":" + std::to_string(lineno) + ": question " + q.qid +
                      " has task '" + q.task + "', expected A or B");
    if (!seen.insert(q.qid).second)
      throw DataError(source + ":" + std::to_string(lineno) + ": duplicate qid " + q.qid);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Question> load_questions(const std::filesystem::path& path) {
  return parse_questions(read_file(path), path.string());
}

std::string to_jsonl(const Question& q) {
  ordered_json j;
  j["qid"] = q.qid;
  j["task"] = q.task;
  j["category"] = q.category;
  j["patient_id"] = q.patient_id;
  j["admission_ids"] = q.admission_ids;
  j["question"] = q.question;
  j["expected_answer"] = q.expected_answer;
  if (q.section) j["section"] = *q.section;
  j["gold_version"] = q.gold_version;
  return j.dump() + "\n";
}

std::map<std::string, std::size_t> category_histogram(const std::vector<Question>& qs) {
  std::map<std::string, std::size_t> h;
  for (const auto& q : qs) ++h[q.category];
  return h;
}

Corrections load_corrections(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw DataError(path.string() + ": expected an object of qid -> answer");
  Corrections c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string()) throw DataError(path.string() + ": correction for " + it.key() + " is not a string");
    c[it.key()] = it.value().get<std::string>();
  }
  return c;
}

std::vector<Question> apply_corrections(std::vector<Question> qs, const Corrections& corrections,
                                        const std::string& version) {
  std::map<std::string, Question*> by_qid;
  for (auto& q : qs) by_qid[q.qid] = &q;
  for (const auto& [qid, answer] : corrections) {
    auto it = by_qid.find(qid);
    if (it == by_qid.end()) throw DataError("correction for unknown qid " + qid);
    it->second->expected_answer = answer;
  }
  for (auto& q : qs) q.gold_version = version;
  return qs;
}

ExclusionList load_exclusions(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }
  ExclusionList l;
  l.exclude_change = j.value("exclude_change", false);
  if (j.contains("qids")) {
    for (const auto& q : j["qids"]) {
      if (!q.is_string() || q.get<std::string>().empty())
        throw DataError(path.string() + ": qids must be non-empty strings");
      l.qids.push_back(q.get<std::string>());
    }
  }
  return l;
}

ExclusionResult apply_exclusions(const std::vector<Question>& qs, const ExclusionList& list) {
  const std::set<std::string> listed(list.qids.begin(), list.qids.end());
  std::set<std::string> known;
  ExclusionResult r;
  for (const auto& q : qs) {
    known.insert(q.qid);
    if (list.exclude_change && q.category == "change") {
      ++r.removed_change;
      continue;
    }
    if (listed.count(q.qid)) {
      ++r.removed_listed;
      continue;
    }
    r.kept.push_back(q);
  }
  for (const auto& q : listed) {
    if (!known.count(q)) r.unknown_qids.push_back(q);
  }
  return r;
}

}  // namespace epikg::bench
