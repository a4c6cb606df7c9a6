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

#include <memory>
#include <string>

#include "epikg/adjudication/service.hpp"

namespace epikg::adjudication {

struct ServerOptions {
  std::string cors_origin = "*";
};

// JSON API over an AdjudicationService:
//   POST /api/sessions                 admin   {rater_id, items?, seed?}
//   GET  /api/sessions/{id}/next       rater
//   POST /api/sessions/{id}/ratings    rater   {item_id, slot, five dimensions, note?}
//   GET  /api/sessions/{id}/progress   rater
//   GET  /api/export[?key=...]         admin
//   GET  /api/rubric                   open
// Tokens travel as "Authorization: Bearer <token>". Errors are
// {"error": message} with 400, 401, 403, 404 or 409.
class AdjudicationServer {
 public:
  AdjudicationServer(AdjudicationService& service, ServerOptions options = {});
  ~AdjudicationServer();
  AdjudicationServer(const AdjudicationServer&) = delete;
  AdjudicationServer& operator=(const AdjudicationServer&) = delete;

  // Blocks until stop().
  bool listen(const std::string& host, int port);
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace epikg::adjudication
