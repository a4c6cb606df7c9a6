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
#include <stdexcept>
#include <string>
#include <vector>

namespace epikg::bench {

// A backend call failed; the runner records the item as errored and moves on.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  // Must be safe to call from several threads at once.
  virtual std::string generate(const std::string& prompt) = 0;
  virtual std::string identity() const = 0;
};

struct ReplayRecord {
  std::string prompt_sha256;
  std::string answer;
};

// Answers looked up by SHA-256 of the prompt. A prompt with no recorded
// answer is a BackendError.
class ReplayBackend : public LlmBackend {
 public:
  ReplayBackend(std::map<std::string, std::string> answers, std::string identity);
  // JSONL of {prompt_sha256, answer}; duplicate hashes must agree.
  static std::unique_ptr<ReplayBackend> load(const std::filesystem::path& path, std::string identity);

  std::string generate(const std::string& prompt) override;
  std::string identity() const override { return identity_; }
  std::size_t size() const { return answers_.size(); }

 private:
  std::map<std::string, std::string> answers_;
  std::string identity_;
};

// Sorted by hash so the file is independent of generation order.
std::string replay_jsonl(std::vector<ReplayRecord> records);

}  // namespace epikg::bench
