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

#include "epikg/stats/multiplicity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace epikg::stats {
namespace {

std::vector<double> step_up(const std::vector<double>& p, double factor) {
  const std::size_t m = p.size();
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("p-values must lie in [0, 1]");
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] < p[b]; });
  std::vector<double> q(m);
  double running = 1.0;
  for (std::size_t r = m; r-- > 0;) {
    const std::size_t i = order[r];
    const double v = std::min(1.0, p[i] * (factor * static_cast<double>(m) / static_cast<double>(r + 1)));
    running = std::min(running, v);
    q[i] = running;
  }
  return q;
}

}  // namespace

double by_factor(std::size_t m) {
  double c = 0.0;
  for (std::size_t i = 1; i <= m; ++i) c += 1.0 / static_cast<double>(i);
  return c;
}

std::vector<double> bh_fdr(const std::vector<double>& p) { return step_up(p, 1.0); }
std::vector<double> by_fdr(const std::vector<double>& p) { return step_up(p, by_factor(p.size())); }

}  // namespace epikg::stats
