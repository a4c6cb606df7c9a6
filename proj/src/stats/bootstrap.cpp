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

#include "epikg/stats/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "epikg/stats/distributions.hpp"

namespace epikg::stats {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

struct Units {
  // Each resampling unit is a list of item indices: one item, or one cluster.
  std::vector<std::vector<std::size_t>> members;
};

Units make_units(std::size_t n, const std::vector<std::string>* keys) {
  Units u;
  if (!keys) {
    u.members.resize(n);
    for (std::size_t i = 0; i < n; ++i) u.members[i] = {i};
    return u;
  }
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < n; ++i) by_key[(*keys)[i]].push_back(i);
  for (auto& [k, v] : by_key) u.members.push_back(std::move(v));
  return u;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

std::size_t draw_index(std::uint64_t key, std::uint64_t counter, std::size_t n) {
  const std::uint64_t v = splitmix64(key + counter * kGolden);
  return static_cast<std::size_t>((static_cast<unsigned __int128>(v) * n) >> 64);
}

double quantile_sorted(const std::vector<double>& s, double p) {
  if (s.empty()) throw std::invalid_argument("quantile of an empty sample");
  p = std::clamp(p, 0.0, 1.0);
  const double h = static_cast<double>(s.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

BootstrapResult bca_bootstrap(std::size_t n, const IndexStatistic& statistic,
                              const BootstrapOptions& opts,
                              const std::vector<std::string>* cluster_keys) {
  if (n == 0) throw std::invalid_argument("bootstrap needs at least one item");
  if (cluster_keys && cluster_keys->size() != n)
    throw std::invalid_argument("one cluster key per item required");
  if (opts.resamples == 0) throw std::invalid_argument("bootstrap needs at least one resample");

  const Units units = make_units(n, cluster_keys);
  const std::size_t m = units.members.size();

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  BootstrapResult res;
  res.point = statistic(all);
  res.ci.level = opts.level;
  if (std::isnan(res.point)) throw std::domain_error("statistic is undefined on the full sample");

  std::vector<double> boots(opts.resamples);
  auto work = [&](std::size_t from, std::size_t to) {
    std::vector<std::size_t> idx;
    for (std::size_t r = from; r < to; ++r) {
      const std::uint64_t key = stream_key(opts.seed, r);
      idx.clear();
      for (std::size_t j = 0; j < m; ++j) {
        const auto& mem = units.members[draw_index(key, j, m)];
        idx.insert(idx.end(), mem.begin(), mem.end());
      }
      boots[r] = statistic(idx);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(opts.resamples)));
  if (jobs == 1) {
    work(0, opts.resamples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (opts.resamples + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      const std::size_t from = t * chunk, to = std::min(opts.resamples, from + chunk);
      if (from < to) pool.emplace_back(work, from, to);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> kept;
  kept.reserve(boots.size());
  for (double b : boots) {
    if (std::isnan(b)) {
      ++res.skipped;
    } else {
      kept.push_back(b);
    }
  }
  if (kept.empty()) throw std::domain_error("statistic undefined on every resample");
  std::sort(kept.begin(), kept.end());
  res.resamples_used = kept.size();
  if (kept.front() == kept.back()) {
    res.ci.lower = res.ci.upper = kept.front();
    return res;
  }

  const double B = static_cast<double>(kept.size());
  double less = 0.0, equal = 0.0;
  for (double b : kept) {
    if (b < res.point) less += 1.0;
    if (b == res.point) equal += 1.0;
  }
  // Keep the fraction inside (0, 1) when the point lies outside the bootstrap range.
  const double frac = std::clamp((less + 0.5 * equal) / B, 0.5 / B, 1.0 - 0.5 / B);
  res.z0 = normal_quantile(frac);

  std::vector<double> jack;
  for (std::size_t leave = 0; leave < m && m > 1; ++leave) {
    std::vector<std::size_t> idx;
    for (std::size_t u = 0; u < m; ++u) {
      if (u != leave) idx.insert(idx.end(), units.members[u].begin(), units.members[u].end());
    }
    const double v = statistic(idx);
    if (std::isnan(v)) {
      ++res.jackknife_skipped;
    } else {
      jack.push_back(v);
    }
  }
  if (!jack.empty()) {
    double mean = 0.0;
    for (double v : jack) mean += v;
    mean /= static_cast<double>(jack.size());
    double s2 = 0.0, s3 = 0.0;
    for (double v : jack) {
      const double d = mean - v;
      s2 += d * d;
      s3 += d * d * d;
    }
    const double den = 6.0 * std::pow(s2, 1.5);
    res.acceleration = den > 0.0 ? s3 / den : 0.0;
  }

  const double alpha = 1.0 - opts.level;
  auto bound = [&](double q) {
    const double zq = normal_quantile(q);
    const double adj = normal_cdf(res.z0 + (res.z0 + zq) / (1.0 - res.acceleration * (res.z0 + zq)));
    return quantile_sorted(kept, adj);
  };
  res.ci.lower = bound(alpha / 2.0);
  res.ci.upper = bound(1.0 - alpha / 2.0);
  return res;
}

BootstrapResult bca_bootstrap(const std::vector<double>& data,
                              const std::function<double(const std::vector<double>&)>& statistic,
                              const BootstrapOptions& opts) {
  return bca_bootstrap(
      data.size(),
      [&](const std::vector<std::size_t>& idx) {
        std::vector<double> sample;
        sample.reserve(idx.size());
        for (std::size_t i : idx) sample.push_back(data[i]);
        return statistic(sample);
      },
      opts);
}

}  // namespace epikg::stats
