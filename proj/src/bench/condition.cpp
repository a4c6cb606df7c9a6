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

#include "epikg/bench/condition.hpp"

#include "epikg/core/errors.hpp"

namespace epikg::bench {

const std::vector<Condition>& all_conditions() {
  using R = RetrievalMode;
  static const std::vector<Condition> kAll = {
      {ConditionId::C1, "C1", "C1_llm_alone", R::None, false, Routing::None},
      {ConditionId::C1b, "C1b", "C1b_discharge_only", R::DischargeOnly, false, Routing::None},
      {ConditionId::C2, "C2", "C2_vanilla_rag", R::Tfidf, false, Routing::None},
      {ConditionId::C2b, "C2b", "C2b_dense_rag", R::DenseStub, false, Routing::None},
      {ConditionId::C3, "C3", "C3_kg_rag", R::GraphAndDocs, false, Routing::None},
      {ConditionId::C4, "C4", "C4_epistemic_kg_rag", R::GraphAndDocs, true, Routing::None},
      {ConditionId::C4gKw, "C4g_kw", "C4g_kw_intent_aware", R::GraphAndDocs, true, Routing::Keyword},
      {ConditionId::C4gOracle, "C4g_oracle", "C4g_intent_aware", R::GraphAndDocs, true, Routing::Oracle},
      {ConditionId::C4gPlus, "C4gPlus", "C4gPlus_kg_rag_full_notes", R::GraphAndDocs, true, Routing::Oracle,
       true},
      {ConditionId::C6, "C6", "C6_long_context", R::AllNotes, false, Routing::None},
      {ConditionId::C7, "C7", "C7_deterministic", R::Deterministic, true, Routing::None},
  };
  return kAll;
}

const Condition& condition(ConditionId id) {
  for (const auto& c : all_conditions()) {
    if (c.id == id) return c;
  }
  throw ConfigError("unknown condition");
}

const Condition& parse_condition(std::string_view s) {
  for (const auto& c : all_conditions()) {
    if (s == c.name || s == c.checkpoint) return c;
  }
  std::string known;
  for (const auto& c : all_conditions()) known += (known.empty() ? "" : ", ") + c.name;
  throw ConfigError("unknown condition '" + std::string(s) + "' (known: " + known + ")");
}

std::string_view to_string(RetrievalMode m) {
  switch (m) {
    case RetrievalMode::None: return "none";
    case RetrievalMode::DischargeOnly: return "discharge-only";
    case RetrievalMode::Tfidf: return "tfidf";
    case RetrievalMode::DenseStub: return "dense-stub";
    case RetrievalMode::GraphAndDocs: return "graph+doc";
    case RetrievalMode::AllNotes: return "all-notes";
    case RetrievalMode::Deterministic: return "deterministic";
  }
  return "none";
}

std::string_view to_string(Routing r) {
  switch (r) {
    case Routing::None: return "none";
    case Routing::Keyword: return "keyword";
    case Routing::Oracle: return "oracle";
  }
  return "none";
}

}  // namespace epikg::bench
