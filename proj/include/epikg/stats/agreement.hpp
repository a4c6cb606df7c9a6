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
#include <vector>

namespace epikg::stats {

enum class KappaWeighting { None, Linear, Quadratic };

// Labels are ordinal category indices 0..k-1 (k inferred from the data). When
// chance agreement is 1 (one shared category) the result is 1.0. Throws
// std::invalid_argument for empty or unequal-length inputs or negative labels.
double cohen_kappa(const std::vector<int>& r1, const std::vector<int>& r2,
                   KappaWeighting weighting = KappaWeighting::None);

// Rows are items, columns category counts. Every row must sum to the same
// rater count >= 2, otherwise std::domain_error.
double fleiss_kappa(const std::vector<std::vector<std::int64_t>>& counts);

}  // namespace epikg::stats
