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

#include "epikg/evaluator/evaluator.hpp"

#include <cmath>

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"
#include "epikg/evaluator/matching.hpp"

namespace epikg::evaluator {

std::string_view to_string(EvaluatorVersion v) {
  switch (v) {
    case EvaluatorVersion::V0: return "v0";
    case EvaluatorVersion::V1: return "v1";
    case EvaluatorVersion::V2: return "v2";
  }
  return "v2";
}

EvaluatorVersion parse_version(std::string_view s) {
  const std::string n = text::lower(text::trim(s));
  if (n == "v0") return EvaluatorVersion::V0;
  if (n == "v1") return EvaluatorVersion::V1;
  if (n == "v2") return EvaluatorVersion::V2;
  throw ConfigError("unknown evaluator version '" + std::string(s) + "'");
}

EvalResult evaluate(const std::string& category, std::string_view expected,
                    std::string_view predicted, EvaluatorVersion version,
                    const KeywordConfig& cfg) {
  const CategoryRule& rule = cfg.rule(category);
  EvalResult r;
  r.version = version;

  const std::string body =
      version == EvaluatorVersion::V0 ? text::lower(predicted) : strip_preamble(predicted);
  r.stripped_length = body.size();
  auto has = [&](const std::string& kw) {
    return version == EvaluatorVersion::V0 ? substring_match(body, kw)
                                           : word_boundary_match(body, kw);
  };

  for (const auto& kw : rule.keywords) {
    if (has(kw)) r.matched.push_back(kw);
  }
  bool correct = !r.matched.empty();

  if (rule.consults_gold) {
    const auto gold = gold_content_words(expected, cfg);
    std::size_t hits = 0;
    for (const auto& w : gold) {
      if (has(w)) {
        ++hits;
        r.matched.push_back(w);
      }
    }
    const std::size_t need =
        static_cast<std::size_t>(std::ceil(cfg.gold_coverage * static_cast<double>(gold.size())));
    correct = correct || (!gold.empty() && hits >= need);
  }

  if (version == EvaluatorVersion::V2) {
    if (correct && !rule.v2_required.empty()) {
      bool any = false;
      for (const auto& kw : rule.v2_required) {
        if (has(kw)) {
          any = true;
          r.matched.push_back(kw);
        }
      }
      correct = any;
    }
    r.abstention = detect_abstention(body, cfg);
    if (r.abstention) correct = false;
  } else {
    r.abstention = detect_abstention(body, cfg);
  }
  r.correct = correct;
  return r;
}

}  // namespace epikg::evaluator
