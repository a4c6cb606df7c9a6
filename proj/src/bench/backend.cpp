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

#include "epikg/bench/backend.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epikg/core/digest.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"

namespace epikg::bench {

ReplayBackend::ReplayBackend(std::map<std::string, std::string> answers, std::string identity)
    : answers_(std::move(answers)), identity_(std::move(identity)) {}

std::unique_ptr<ReplayBackend> ReplayBackend::load(const std::filesystem::path& path, std::string identity) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open replay corpus " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::map<std::string, std::string> answers;
  std::size_t lineno = 0;
  for (const auto& line : text::split_lines(ss.str())) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string(), lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("prompt_sha256") || !j.contains("answer"))
      throw ParseError(path.string(), lineno, "replay record needs prompt_sha256 and answer");
    const std::string h = j["prompt_sha256"].get<std::string>();
    const std::string a = j["answer"].get<std::string>();
    auto [it, fresh] = answers.emplace(h, a);
    if (!fresh && it->second != a)
      throw ParseError(path.string(), lineno, "conflicting answers for prompt " + h);
  }
  return std::make_unique<ReplayBackend>(std::move(answers), std::move(identity));
}

std::string ReplayBackend::generate(const std::string& prompt) {
  const std::string h = sha256_hex(prompt);
  auto it = answers_.find(h);
  if (it == answers_.end()) throw BackendError("replay corpus has no answer for prompt " + h);
  return it->second;
}

std::string replay_jsonl(std::vector<ReplayRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.prompt_sha256 < b.prompt_sha256; });
  records.erase(std::unique(records.begin(), records.end(),
                            [](const auto& a, const auto& b) { return a.prompt_sha256 == b.prompt_sha256; }),
                records.end());
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["prompt_sha256"] = r.prompt_sha256;
    j["answer"] = r.answer;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace epikg::bench
