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

#include <map>
#include <optional>
#include <string>

#include "epikg/bench/backend.hpp"

namespace epikg::bench {

struct HttpBackendConfig {
  std::string url;  // chat-completions endpoint, http:// or https://
  std::string token;
  std::string model;
  int timeout_seconds = 120;
  double temperature = 0.0;
  int max_tokens = 1024;
};

// From EPIKG_BACKEND_URL, EPIKG_BACKEND_TOKEN, EPIKG_BACKEND_MODEL and
// EPIKG_BACKEND_TIMEOUT. ConfigError when the URL or model is unset.
HttpBackendConfig http_config_from_env();

// OpenAI-style chat-completions client: one user message per prompt, the
// first choice's message content is the answer.
class HttpBackend : public LlmBackend {
 public:
  explicit HttpBackend(HttpBackendConfig cfg);
  std::string generate(const std::string& prompt) override;
  std::string identity() const override { return cfg_.model; }

 private:
  HttpBackendConfig cfg_;
  std::string scheme_host_;
  std::string path_;
};

}  // namespace epikg::bench
