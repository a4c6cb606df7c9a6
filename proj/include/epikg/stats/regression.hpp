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

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  double p_value = 1.0;  // two-sided, t with n - 2 df
  std::size_t n = 0;
};

// Ordinary least squares of y on x. Throws std::invalid_argument for
// mismatched lengths or n < 3, std::domain_error for constant x.
RegressionResult linear_regression(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace epikg::stats
