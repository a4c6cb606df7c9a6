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

#include <vector>

namespace epikg::evaluator {

struct SafetyItem {
  bool error = false;
  bool false_positive_assertion = false;  // asserted a finding that is absent
};

struct SafetyWeights {
  double false_positive = 2.0;
  double other = 1.0;
};

// 1 - (1/N) * sum of weighted errors. Not clamped: with every item a
// false-positive error the score is 1 - w. Throws std::domain_error when
// `items` is empty or a weight is not positive.
double safety_score(const std::vector<SafetyItem>& items, const SafetyWeights& weights = {});

}  // namespace epikg::evaluator
