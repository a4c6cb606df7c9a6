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

#include "epikg/bench/http_backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "epikg/core/errors.hpp"

namespace epikg::bench {
namespace {

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

}  // namespace

HttpBackendConfig http_config_from_env() {
  HttpBackendConfig c;
  c.url = env("EPIKG_BACKEND_URL");
  c.token = env("EPIKG_BACKEND_TOKEN");
  c.model = env("EPIKG_BACKEND_MODEL");
  if (const std::string t = env("EPIKG_BACKEND_TIMEOUT"); !t.empty()) c.timeout_seconds = std::stoi(t);
  if (c.url.empty()) throw ConfigError("EPIKG_BACKEND_URL is not set");
  if (c.model.empty()) throw ConfigError("EPIKG_BACKEND_MODEL is not set");
  return c;
}

HttpBackend::HttpBackend(HttpBackendConfig cfg) : cfg_(std::move(cfg)) {
  const auto scheme_end = cfg_.url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("backend URL needs a scheme: " + cfg_.url);
  const auto path_start = cfg_.url.find('/', scheme_end + 3);
  scheme_host_ = cfg_.url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : cfg_.url.substr(path_start);
}

std::string HttpBackend::generate(const std::string& prompt) {
  // A client per call keeps concurrent generate() calls independent.
  httplib::Client client(scheme_host_);
  client.set_connection_timeout(cfg_.timeout_seconds);
  client.set_read_timeout(cfg_.timeout_seconds);
  httplib::Headers headers;
  if (!cfg_.token.empty()) headers.emplace("Authorization", "Bearer " + cfg_.token);

  nlohmann::json body = {
      {"model", cfg_.model},
      {"temperature", cfg_.temperature},
      {"max_tokens", cfg_.max_tokens},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
  };
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) throw BackendError("backend request failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw BackendError("backend returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  try {
    const auto j = nlohmann::json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("unexpected backend response: ") + e.what());
  }
}

}  // namespace epikg::bench
