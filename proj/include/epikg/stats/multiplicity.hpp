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

namespace epikg::stats {

// Step-up adjusted q-values, returned in input order. Throws
// std::domain_error for p outside [0, 1].
std::vector<double> bh_fdr(const std::vector<double>& p);
// BH scaled by c(m) = sum_{i=1..m} 1/i, capped at 1.
std::vector<double> by_fdr(const std::vector<double>& p);
double by_factor(std::size_t m);

}  // namespace epikg::stats
