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

#include "epikg/stats/intervals.hpp"

namespace epikg::stats {

// 2x2 paired outcome table: a both correct, b first only, c second only,
// d neither.
struct PairedTable {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;

  std::int64_t n() const { return a + b + c + d; }
  void validate() const;  // domain_error on negative cells or n == 0
};

// Two-sided exact binomial test on the discordant pairs: min(1, 2 P(X <= min(b, c))).
// (0, 0) gives 1.
double mcnemar_exact(std::int64_t b, std::int64_t c);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Uncorrected by default. Throws std::domain_error for b = c = 0.
ChiSquareResult mcnemar_chi2(std::int64_t b, std::int64_t c, bool continuity = false);

enum class NewcombeVariant {
  // Wilson interval on c / (b + c) mapped onto the difference by
  // (2l - 1)(b + c) / n. Default.
  Conditional,
  // Square-and-add of the two marginal Wilson intervals with the
  // phi correlation, Newcombe's tenth method.
  Method10,
  Method10Uncorrected,  // same without the continuity-corrected phi
};

struct PairedDifference {
  double delta = 0.0;  // p2 - p1 = (c - b) / n
  ConfidenceInterval ci;
};

PairedDifference newcombe_paired_ci(const PairedTable& t, double level = 0.95,
                                    NewcombeVariant variant = NewcombeVariant::Conditional);

// delta +/- z * sqrt((b + c) - (c - b)^2 / n) / n
PairedDifference paired_wald_ci(const PairedTable& t, double level = 0.95);

// Two-sided exact binomial at 0.5 on the non-tied pairs; (0, 0) gives 1.
double sign_test(std::int64_t n_positive, std::int64_t n_negative);

}  // namespace epikg::stats
