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

#include <cstdint>

namespace epikg::stats {

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
};

// z such that P(|Z| <= z) = level.
double two_sided_z(double level);

// Wilson score interval for k successes in n trials. Throws
// std::domain_error unless 0 <= k <= n, n >= 1, level in (0, 1).
ConfidenceInterval wilson_ci(std::int64_t k, std::int64_t n, double level = 0.95);

}  // namespace epikg::stats
