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

#include "epikg/bench/checkpoint.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "epikg/core/errors.hpp"

namespace epikg::bench {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Length of the prefix made of complete lines.
std::size_t complete_prefix(const std::string& s) {
  const auto last = s.rfind('\n');
  return last == std::string::npos ? 0 : last + 1;
}

std::vector<Prediction> parse_lines(const std::string& s, const std::string& source) {
  std::vector<Prediction> out;
  std::size_t pos = 0, lineno = 0;
  while (pos < s.size()) {
    const auto eol = s.find('\n', pos);
    if (eol == std::string::npos) break;
    ++lineno;
    const std::string line = s.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    out.push_back(prediction_from_json(line, source, lineno));
  }
  return out;
}

}  // namespace

std::string to_jsonl(const Prediction& p) {
  nlohmann::ordered_json j;
  j["qid"] = p.qid;
  j["condition"] = p.condition;
  j["model"] = p.model;
  j["predicted_answer"] = p.predicted_answer;
  j["evidence"] = p.evidence;
  j["elapsed_ms"] = p.elapsed_ms;
  j["ts"] = p.ts;
  if (p.error) j["error"] = *p.error;
  return j.dump() + "\n";
}

Prediction prediction_from_json(const std::string& line, const std::string& source, std::size_t lineno) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
  }
  Prediction p;
  try {
    p.qid = j.at("qid").get<std::string>();
    p.condition = j.at("condition").get<std::string>();
    p.model = j.value("model", std::string());
    p.predicted_answer = j.at("predicted_answer").get<std::string>();
    p.evidence = j.value("evidence", std::string());
    p.elapsed_ms = j.value("elapsed_ms", std::int64_t{0});
    p.ts = j.value("ts", std::string());
    if (j.contains("error") && j["error"].is_string()) p.error = j["error"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, lineno, e.what());
  }
  return p;
}

std::vector<Prediction> read_checkpoint(const std::filesystem::path& path) {
  return parse_lines(slurp(path), path.string());
}

Timestamp SystemClock::now() const { return Timestamp::now(); }

std::int64_t SystemClock::monotonic_ms() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

CheckpointWriter::CheckpointWriter(const std::filesystem::path& path, bool resume) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  if (resume && std::filesystem::exists(path)) {
    const std::string content = slurp(path);
    const std::size_t keep = complete_prefix(content);
    existing_ = parse_lines(content.substr(0, keep), path.string());
    if (keep != content.size()) std::filesystem::resize_file(path, keep);
    for (const auto& p : existing_) done_.insert(p.qid);
    out_.open(path, std::ios::binary | std::ios::app);
  } else {
    out_.open(path, std::ios::binary | std::ios::trunc);
  }
  if (!out_) throw DataError("cannot write checkpoint " + path.string());
}

void CheckpointWriter::append(const Prediction& p) {
  std::lock_guard lock(mu_);
  out_ << to_jsonl(p);
  out_.flush();
  if (!out_) throw DataError("checkpoint write failed for " + p.qid);
  done_.insert(p.qid);
}

}  // namespace epikg::bench
