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
#include <string_view>
#include <vector>

namespace epikg::bench {

enum class RetrievalMode { None, DischargeOnly, Tfidf, DenseStub, GraphAndDocs, AllNotes, Deterministic };
enum class Routing { None, Keyword, Oracle };

enum class ConditionId { C1, C1b, C2, C2b, C3, C4, C4gKw, C4gOracle, C4gPlus, C6, C7 };

struct Condition {
  ConditionId id;
  std::string name;        // short id used on the command line: "C4g_oracle"
  std::string checkpoint;  // file stem: "C4g_intent_aware"
  RetrievalMode retrieval;
  bool assertions;         // evidence lines carry epistemic labels
  Routing routing;
  bool all_notes = false;  // C4gPlus: routed graph evidence plus every note
};

const std::vector<Condition>& all_conditions();
const Condition& condition(ConditionId id);
// Accepts the short id or the checkpoint stem, case-sensitive. Throws
// ConfigError for anything else.
const Condition& parse_condition(std::string_view s);

std::string_view to_string(RetrievalMode m);
std::string_view to_string(Routing r);

}  // namespace epikg::bench
