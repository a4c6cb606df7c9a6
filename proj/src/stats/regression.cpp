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

#include "epikg/stats/regression.hpp"

#include <cmath>
#include <stdexcept>

#include "epikg/stats/distributions.hpp"

namespace epikg::stats {

RegressionResult linear_regression(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  if (x.size() < 3) throw std::invalid_argument("regression needs at least three points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("regression undefined for constant x");
  RegressionResult r;
  r.n = x.size();
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  if (syy == 0.0) {
    r.r = 0.0;
    r.p_value = 1.0;
    return r;
  }
  r.r = sxy / std::sqrt(sxx * syy);
  const double df = n - 2.0;
  const double r2 = r.r * r.r;
  if (r2 >= 1.0) {
    r.p_value = 0.0;
  } else {
    const double t = r.r * std::sqrt(df / (1.0 - r2));
    r.p_value = 2.0 * student_t_sf(std::fabs(t), df);
  }
  return r;
}

}  // namespace epikg::stats
