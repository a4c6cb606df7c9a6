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
#include <mutex>
#include <string>
#include <vector>

namespace epikg::adjudication {

// One persisted session event: "created", "served" or "rating".
struct Event {
  std::string type;
  std::map<std::string, std::string> fields;
  std::vector<std::string> items;  // item order, "created" only
};

// Append-only event log, one <session_id>.jsonl per session. Nothing is
// ever rewritten; state is rebuilt by replaying the logs.
class EventStore {
 public:
  explicit EventStore(std::filesystem::path dir);
  void append(const std::string& session_id, const Event& e);
  // session id -> events in write order. A torn final line is ignored.
  std::map<std::string, std::vector<Event>> load_all() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
};

}  // namespace epikg::adjudication
