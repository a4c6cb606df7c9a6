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

#include "epikg/stats/distributions.hpp"

#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace epikg::stats {

namespace bm = boost::math;

double normal_cdf(double z) { return bm::cdf(bm::normal_distribution<>(), z); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal quantile needs p in (0, 1)");
  return bm::quantile(bm::normal_distribution<>(), p);
}

double chi2_sf(double x, double df) {
  if (x <= 0.0) return 1.0;
  return bm::cdf(bm::complement(bm::chi_squared_distribution<>(df), x));
}

double student_t_sf(double t, double df) {
  return bm::cdf(bm::complement(bm::students_t_distribution<>(df), t));
}

double binomial_cdf(std::int64_t k, std::int64_t n, double p) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  return bm::cdf(bm::binomial_distribution<>(static_cast<double>(n), p), static_cast<double>(k));
}

}  // namespace epikg::stats
