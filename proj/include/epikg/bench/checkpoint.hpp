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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epikg/core/dates.hpp"

namespace epikg::bench {

struct Prediction {
  std::string qid;
  std::string condition;
  std::string model;
  std::string predicted_answer;  // stored in full, never truncated
  std::string evidence;
  std::int64_t elapsed_ms = 0;
  std::string ts;
  std::optional<std::string> error;
};

// One line, newline included.
std::string to_jsonl(const Prediction& p);
// Throws ParseError.
Prediction prediction_from_json(const std::string& line, const std::string& source, std::size_t lineno);

// Every complete line of a checkpoint; a final line without its newline is a
// write interrupted by a crash and is ignored.
std::vector<Prediction> read_checkpoint(const std::filesystem::path& path);

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
  virtual std::int64_t monotonic_ms() const = 0;
};

class SystemClock : public Clock {
 public:
  Timestamp now() const override;
  std::int64_t monotonic_ms() const override;
};

// Frozen time: checkpoints written against it are byte-reproducible.
class FixedClock : public Clock {
 public:
  explicit FixedClock(Timestamp t) : t_(t) {}
  Timestamp now() const override { return t_; }
  std::int64_t monotonic_ms() const override { return 0; }

 private:
  Timestamp t_;
};

// Single appender for a checkpoint file. Opening with resume keeps the
// complete lines already present (truncating a torn final line); without
// resume any existing file is replaced.
class CheckpointWriter {
 public:
  CheckpointWriter(const std::filesystem::path& path, bool resume);
  const std::set<std::string>& done() const { return done_; }
  const std::vector<Prediction>& existing() const { return existing_; }
  // Thread-safe; each call writes and flushes one line.
  void append(const Prediction& p);

 private:
  std::mutex mu_;
  std::ofstream out_;
  std::set<std::string> done_;
  std::vector<Prediction> existing_;
};

}  // namespace epikg::bench
