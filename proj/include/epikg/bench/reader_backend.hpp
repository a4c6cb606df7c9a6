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

#include <string>

#include "epikg/bench/backend.hpp"

namespace epikg::bench {

// Deterministic extractive reader. It answers from the prompt alone: graph
// evidence lines about the concepts the question names are restated as
// sentences, otherwise the note sentences sharing the most question words
// are quoted, otherwise it declines. Used to build the shipped replay corpus
// and as an offline baseline; it has no clinical knowledge of its own.
class ReaderBackend : public LlmBackend {
 public:
  std::string generate(const std::string& prompt) override;
  std::string identity() const override { return "extractive-reader-1"; }
};

inline constexpr const char* kReaderDecline = "Cannot determine from the available information.";

}  // namespace epikg::bench
