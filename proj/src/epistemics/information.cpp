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

#include "epikg/epistemics/information.hpp"

#include <cmath>
#include <stdexcept>

namespace epikg::epistemics {

double assertion_entropy(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c < 0) throw std::domain_error("assertion counts must be non-negative");
    total += c;
  }
  if (total == 0) throw std::domain_error("assertion entropy needs at least one positive count");
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  // -0.0 for a degenerate distribution
  return h == 0.0 ? 0.0 : h;
}

double faithfulness_bound(double f_np) {
  if (!(f_np >= 0.0 && f_np <= 1.0))
    throw std::domain_error("non-present fraction must lie in [0, 1]");
  return 1.0 - f_np;
}

double non_present_fraction(std::size_t non_present, std::size_t total) {
  if (total == 0) throw std::domain_error("non-present fraction of an empty collection");
  if (non_present > total) throw std::domain_error("non-present count exceeds total");
  return static_cast<double>(non_present) / static_cast<double>(total);
}

}  // namespace epikg::epistemics
