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

#include "epikg/adjudication/store.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epikg/core/errors.hpp"

namespace epikg::adjudication {

EventStore::EventStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void EventStore::append(const std::string& session_id, const Event& e) {
  nlohmann::ordered_json j;
  j["type"] = e.type;
  for (const auto& [k, v] : e.fields) j[k] = v;
  if (e.type == "created") j["items"] = e.items;
  std::lock_guard lock(mu_);
  std::ofstream out(dir_ / (session_id + ".jsonl"), std::ios::binary | std::ios::app);
  out << j.dump() << '\n';
  out.flush();
  if (!out) throw DataError("cannot append to session log " + session_id);
}

std::map<std::string, std::vector<Event>> EventStore::load_all() const {
  std::map<std::string, std::vector<Event>> out;
  if (!std::filesystem::is_directory(dir_)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string content = ss.str();
    auto& events = out[entry.path().stem().string()];
    std::size_t pos = 0, lineno = 0;
    while (pos < content.size()) {
      const auto eol = content.find('\n', pos);
      if (eol == std::string::npos) break;
      ++lineno;
      const std::string line = content.substr(pos, eol - pos);
      pos = eol + 1;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(entry.path().string(), lineno, e.what());
      }
      Event e;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "type") {
          e.type = it.value().get<std::string>();
        } else if (it.key() == "items") {
          e.items = it.value().get<std::vector<std::string>>();
        } else if (it.value().is_string()) {
          e.fields[it.key()] = it.value().get<std::string>();
        }
      }
      events.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace epikg::adjudication
