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
#include <functional>
#include <string>
#include <vector>

#include "epikg/stats/intervals.hpp"

namespace epikg::stats {

// Counter-based generator: every (seed, stream, counter) triple maps to one
// 64-bit value, so resample r draws the same indices regardless of which
// thread computes it.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream);
// Uniform index in [0, n) for draw `counter` of the stream with key `key`.
std::size_t draw_index(std::uint64_t key, std::uint64_t counter, std::size_t n);

struct BootstrapOptions {
  std::size_t resamples = 2000;
  std::uint64_t seed = 42;
  double level = 0.95;
  unsigned jobs = 1;
};

struct BootstrapResult {
  double point = 0.0;
  ConfidenceInterval ci;
  double z0 = 0.0;
  double acceleration = 0.0;
  std::size_t resamples_used = 0;
  // Resamples and jackknife replicates whose statistic came out NaN; they are
  // left out of the distribution rather than failing the run.
  std::size_t skipped = 0;
  std::size_t jackknife_skipped = 0;
};

// Statistic over a multiset of item indices (indices may repeat).
using IndexStatistic = std::function<double(const std::vector<std::size_t>&)>;

// BCa interval over n items. With `cluster_keys` (one per item) whole
// clusters are resampled and the jackknife leaves out one cluster at a time.
// Throws std::invalid_argument for n == 0, a cluster key count that differs
// from n, or zero resamples; std::domain_error when the full-sample statistic
// or every resample is NaN.
BootstrapResult bca_bootstrap(std::size_t n, const IndexStatistic& statistic,
                              const BootstrapOptions& opts = {},
                              const std::vector<std::string>* cluster_keys = nullptr);

// Convenience form over plain values.
BootstrapResult bca_bootstrap(const std::vector<double>& data,
                              const std::function<double(const std::vector<double>&)>& statistic,
                              const BootstrapOptions& opts = {});

// Type-7 (linear interpolation) quantile of sorted values.
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace epikg::stats
