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

#include "epikg/stats/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epikg/stats/distributions.hpp"

namespace epikg::stats {

double two_sided_z(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("confidence level must lie in (0, 1)");
  return normal_quantile(0.5 + level / 2.0);
}

ConfidenceInterval wilson_ci(std::int64_t k, std::int64_t n, double level) {
  if (n < 1 || k < 0 || k > n) throw std::domain_error("wilson interval needs 0 <= k <= n, n >= 1");
  const double z = two_sided_z(level);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double denom = 1.0 + z * z / nn;
  const double centre = p + z * z / (2.0 * nn);
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
  ConfidenceInterval ci{(centre - half) / denom, (centre + half) / denom, level};
  // Exact at the boundaries; the closed form can miss by an ulp.
  if (k == 0) ci.lower = 0.0;
  if (k == n) ci.upper = 1.0;
  ci.lower = std::max(0.0, ci.lower);
  ci.upper = std::min(1.0, ci.upper);
  return ci;
}

}  // namespace epikg::stats
