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

#include "epikg/stats/paired.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "epikg/stats/distributions.hpp"

namespace epikg::stats {
namespace {

double two_sided_binomial(std::int64_t x, std::int64_t y) {
  if (x < 0 || y < 0) throw std::domain_error("counts must be non-negative");
  const std::int64_t n = x + y;
  if (n == 0) return 1.0;
  return std::min(1.0, 2.0 * binomial_cdf(std::min(x, y), n, 0.5));
}

}  // namespace

void PairedTable::validate() const {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw std::domain_error("paired table cells must be non-negative");
  if (n() < 1) throw std::domain_error("paired table is empty");
}

double mcnemar_exact(std::int64_t b, std::int64_t c) { return two_sided_binomial(b, c); }

double sign_test(std::int64_t n_positive, std::int64_t n_negative) {
  return two_sided_binomial(n_positive, n_negative);
}

ChiSquareResult mcnemar_chi2(std::int64_t b, std::int64_t c, bool continuity) {
  if (b < 0 || c < 0) throw std::domain_error("counts must be non-negative");
  if (b + c == 0) throw std::domain_error("McNemar chi-square undefined without discordant pairs");
  double diff = std::fabs(static_cast<double>(b - c));
  if (continuity) diff = std::max(0.0, diff - 1.0);
  ChiSquareResult r;
  r.statistic = diff * diff / static_cast<double>(b + c);
  r.p_value = chi2_sf(r.statistic, 1.0);
  return r;
}

PairedDifference newcombe_paired_ci(const PairedTable& t, double level, NewcombeVariant variant) {
  t.validate();
  const double n = static_cast<double>(t.n());
  PairedDifference out;
  out.delta = static_cast<double>(t.c - t.b) / n;
  out.ci.level = level;

  if (variant == NewcombeVariant::Conditional) {
    const std::int64_t disc = t.b + t.c;
    if (disc == 0) {
      out.ci.lower = out.ci.upper = 0.0;
      return out;
    }
    const ConfidenceInterval w = wilson_ci(t.c, disc, level);
    const double scale = static_cast<double>(disc) / n;
    out.ci.lower = (2.0 * w.lower - 1.0) * scale;
    out.ci.upper = (2.0 * w.upper - 1.0) * scale;
    return out;
  }

  const double p1 = static_cast<double>(t.a + t.b) / n;
  const double p2 = static_cast<double>(t.a + t.c) / n;
  const ConfidenceInterval w1 = wilson_ci(t.a + t.b, t.n(), level);
  const ConfidenceInterval w2 = wilson_ci(t.a + t.c, t.n(), level);
  double num = static_cast<double>(t.a) * static_cast<double>(t.d) -
               static_cast<double>(t.b) * static_cast<double>(t.c);
  if (variant == NewcombeVariant::Method10) {
    if (num > n / 2.0) {
      num -= n / 2.0;
    } else if (num >= 0.0) {
      num = 0.0;
    }
  }
  const double den = static_cast<double>(t.a + t.b) * static_cast<double>(t.c + t.d) *
                     static_cast<double>(t.a + t.c) * static_cast<double>(t.b + t.d);
  const double phi = den == 0.0 ? 0.0 : num / std::sqrt(den);
  const double l2 = p2 - w2.lower, u1 = w1.upper - p1;
  const double u2 = w2.upper - p2, l1 = p1 - w1.lower;
  const double dl = l2 * l2 - 2.0 * phi * l2 * u1 + u1 * u1;
  const double du = u2 * u2 - 2.0 * phi * u2 * l1 + l1 * l1;
  out.ci.lower = out.delta - std::sqrt(std::max(dl, 0.0));
  out.ci.upper = out.delta + std::sqrt(std::max(du, 0.0));
  return out;
}

PairedDifference paired_wald_ci(const PairedTable& t, double level) {
  t.validate();
  const double n = static_cast<double>(t.n());
  const double b = static_cast<double>(t.b), c = static_cast<double>(t.c);
  PairedDifference out;
  out.delta = (c - b) / n;
  const double var = std::max(0.0, (b + c) - (c - b) * (c - b) / n);
  const double half = two_sided_z(level) * std::sqrt(var) / n;
  out.ci = {out.delta - half, out.delta + half, level};
  return out;
}

}  // namespace epikg::stats
