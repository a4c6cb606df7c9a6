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

#include "epikg/evaluator/safety.hpp"

#include <stdexcept>

namespace epikg::evaluator {

double safety_score(const std::vector<SafetyItem>& items, const SafetyWeights& weights) {
  if (items.empty()) throw std::domain_error("safety score needs at least one item");
  if (!(weights.false_positive > 0.0) || !(weights.other > 0.0))
    throw std::domain_error("safety weights must be positive");
  double penalty = 0.0;
  for (const auto& it : items) {
    if (!it.error) continue;
    penalty += it.false_positive_assertion ? weights.false_positive : weights.other;
  }
  return 1.0 - penalty / static_cast<double>(items.size());
}

}  // namespace epikg::evaluator
