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

#include "epikg/stats/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace epikg::stats {

double cohen_kappa(const std::vector<int>& r1, const std::vector<int>& r2, KappaWeighting weighting) {
  if (r1.empty() || r1.size() != r2.size())
    throw std::invalid_argument("kappa needs two non-empty label vectors of equal length");
  int k = 0;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    if (r1[i] < 0 || r2[i] < 0) throw std::invalid_argument("kappa labels must be non-negative");
    k = std::max({k, r1[i] + 1, r2[i] + 1});
  }
  const double n = static_cast<double>(r1.size());
  std::vector<double> obs(static_cast<std::size_t>(k * k), 0.0), m1(k, 0.0), m2(k, 0.0);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    obs[static_cast<std::size_t>(r1[i] * k + r2[i])] += 1.0 / n;
    m1[r1[i]] += 1.0 / n;
    m2[r2[i]] += 1.0 / n;
  }
  // Disagreement weights; 0 on the diagonal.
  auto w = [&](int i, int j) {
    if (i == j) return 0.0;
    const double d = std::abs(i - j);
    const double span = k > 1 ? k - 1 : 1;
    switch (weighting) {
      case KappaWeighting::None: return 1.0;
      case KappaWeighting::Linear: return d / span;
      case KappaWeighting::Quadratic: return (d * d) / (span * span);
    }
    return 1.0;
  };
  double o = 0.0, e = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      o += w(i, j) * obs[static_cast<std::size_t>(i * k + j)];
      e += w(i, j) * m1[i] * m2[j];
    }
  }
  if (e == 0.0) return 1.0;
  return 1.0 - o / e;
}

double fleiss_kappa(const std::vector<std::vector<std::int64_t>>& counts) {
  if (counts.empty()) throw std::domain_error("fleiss kappa needs at least one item");
  const std::size_t k = counts.front().size();
  const std::int64_t raters = std::accumulate(counts.front().begin(), counts.front().end(), std::int64_t{0});
  if (raters < 2) throw std::domain_error("fleiss kappa needs at least two raters per item");
  std::vector<double> pj(k, 0.0);
  double pbar = 0.0;
  for (const auto& row : counts) {
    if (row.size() != k) throw std::domain_error("every item needs the same category count");
    std::int64_t sum = 0, sq = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (row[j] < 0) throw std::domain_error("negative rating count");
      sum += row[j];
      sq += row[j] * row[j];
      pj[j] += static_cast<double>(row[j]);
    }
    if (sum != raters) throw std::domain_error("every item must be rated by the same number of raters");
    pbar += static_cast<double>(sq - raters) / static_cast<double>(raters * (raters - 1));
  }
  const double N = static_cast<double>(counts.size());
  pbar /= N;
  double pe = 0.0;
  for (double& p : pj) {
    p /= N * static_cast<double>(raters);
    pe += p * p;
  }
  if (pe == 1.0) return 1.0;
  return (pbar - pe) / (1.0 - pe);
}

}  // namespace epikg::stats
