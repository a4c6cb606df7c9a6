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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>

#include "epikg/epistemics/labels.hpp"

namespace epikg::epistemics {

// Shannon entropy in bits of the empirical label distribution. Throws
// std::domain_error when every count is zero or any count is negative.
double assertion_entropy(std::span<const std::int64_t> counts);

// 1 - f_np: the ceiling on assertion-faithful accuracy for a pipeline that
// drops assertion labels. Throws std::domain_error outside [0, 1].
double faithfulness_bound(double f_np);

// Throws std::domain_error when total is zero or non_present > total.
double non_present_fraction(std::size_t non_present, std::size_t total);

template <class R>
  requires requires(const R& r) {
    { std::begin(r)->assertion } -> std::convertible_to<Assertion>;
  }
double non_present_fraction(const R& items) {
  std::size_t total = 0, np = 0;
  for (const auto& it : items) {
    ++total;
    if (it.assertion != Assertion::Present) ++np;
  }
  return non_present_fraction(np, total);
}

}  // namespace epikg::epistemics
