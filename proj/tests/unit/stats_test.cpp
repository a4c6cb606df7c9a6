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

#include <doctest.h>

#include <stdexcept>

#include <chrono>
#include <cmath>
#include <random>

#include "epikg/stats/agreement.hpp"
#include "epikg/stats/bootstrap.hpp"
#include "epikg/stats/distributions.hpp"
#include "epikg/stats/intervals.hpp"
#include "epikg/stats/multiplicity.hpp"
#include "epikg/stats/paired.hpp"
#include "epikg/stats/regression.hpp"

using namespace epikg::stats;

// Frozen values below come from tests/oracles/*.py (scipy, statsmodels-style
// formulas written out by hand, sklearn for Cohen).

TEST_CASE("wilson interval") {
  const auto w = wilson_ci(169, 189);
  CHECK(w.lower == doctest::Approx(0.8422078873931416).epsilon(1e-12));
  CHECK(w.upper == doctest::Approx(0.9304475411189486).epsilon(1e-12));
  const auto zero = wilson_ci(0, 10);
  CHECK(zero.lower == 0.0);
  CHECK_THROWS_AS(wilson_ci(11, 10), std::domain_error);
  CHECK_THROWS_AS(wilson_ci(1, 0), std::domain_error);
}

TEST_CASE("mcnemar exact and chi-square") {
  CHECK(mcnemar_exact(4, 15) == doctest::Approx(0.0192108154296875).epsilon(1e-12));
  CHECK(mcnemar_exact(15, 4) == mcnemar_exact(4, 15));
  CHECK(mcnemar_exact(0, 0) == 1.0);
  CHECK(mcnemar_chi2(18, 204).statistic == doctest::Approx(155.83783783783784).epsilon(1e-12));
  CHECK(mcnemar_chi2(30, 143).statistic == doctest::Approx(73.8092485549133).epsilon(1e-12));
  CHECK(mcnemar_chi2(20, 93).statistic == doctest::Approx(47.15929203539823).epsilon(1e-12));
  CHECK(mcnemar_chi2(4, 15, true).statistic == doctest::Approx(100.0 / 19.0));
  CHECK_THROWS_AS(mcnemar_chi2(0, 0), std::domain_error);

  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) (void)mcnemar_exact(4, 15);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
  CHECK(us.count() < 100 * 1000);
}

TEST_CASE("mcnemar exact equals direct binomial enumeration") {
  for (int b = 0; b <= 40; ++b) {
    for (int c = 0; c <= 40; ++c) {
      const int n = b + c;
      const int k = std::min(b, c);
      double tail = 0.0;
      for (int i = 0; i <= k; ++i) {
        tail += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) - n * std::log(2.0));
      }
      const double expected = n == 0 ? 1.0 : std::min(1.0, 2.0 * tail);
      INFO("b=" << b << " c=" << c);
      CHECK(mcnemar_exact(b, c) == doctest::Approx(expected).epsilon(1e-10));
      if (n > 0) {
        CHECK(mcnemar_chi2(b, c).statistic == doctest::Approx(double(b - c) * (b - c) / n));
      }
    }
  }
}

TEST_CASE("newcombe paired intervals") {
  const PairedTable t{8, 4, 15, 23};
  const auto cond = newcombe_paired_ci(t);
  CHECK(cond.delta == doctest::Approx(0.22).epsilon(1e-14));
  CHECK(cond.ci.lower == doctest::Approx(0.05065948382701233).epsilon(1e-10));
  CHECK(cond.ci.upper == doctest::Approx(0.3153416575898364).epsilon(1e-10));
  const auto m10 = newcombe_paired_ci(t, 0.95, NewcombeVariant::Method10);
  CHECK(m10.ci.lower == doctest::Approx(0.05128106).epsilon(1e-6));
  CHECK(m10.ci.upper == doctest::Approx(0.3716671).epsilon(1e-6));
  const auto m10u = newcombe_paired_ci(t, 0.95, NewcombeVariant::Method10Uncorrected);
  CHECK(m10u.ci.lower == doctest::Approx(0.0562199).epsilon(1e-6));
  CHECK(m10u.ci.upper == doctest::Approx(0.3675228).epsilon(1e-6));
  const PairedTable small{3, 1, 4, 2};
  const auto su = newcombe_paired_ci(small, 0.95, NewcombeVariant::Method10Uncorrected);
  CHECK(su.ci.lower == doctest::Approx(-0.0987188).epsilon(1e-6));
  CHECK(su.ci.upper == doctest::Approx(0.5876552).epsilon(1e-6));
  const auto sc = newcombe_paired_ci(small, 0.95, NewcombeVariant::Method10);
  CHECK(sc.ci.lower == doctest::Approx(-0.1177318).epsilon(1e-6));
  CHECK(sc.ci.upper == doctest::Approx(0.6011388).epsilon(1e-6));
  CHECK_THROWS_AS(newcombe_paired_ci(PairedTable{}), std::domain_error);
  CHECK_THROWS_AS(newcombe_paired_ci(PairedTable{1, -1, 0, 0}), std::domain_error);
}

TEST_CASE("sign test") {
  CHECK(sign_test(64, 10) == doctest::Approx(8.957e-11).epsilon(1e-3));
  CHECK(sign_test(0, 0) == 1.0);
  CHECK(sign_test(3, 3) == doctest::Approx(1.0));
}

TEST_CASE("multiplicity corrections") {
  CHECK(by_factor(6) == doctest::Approx(2.45).epsilon(1e-12));
  CHECK(by_factor(1) == 1.0);
  const auto q = bh_fdr({0.01, 0.04, 0.03, 0.005});
  CHECK(q[3] == doctest::Approx(0.02));
  CHECK(q[0] == doctest::Approx(0.02));
  CHECK(q[2] == doctest::Approx(0.04));
  CHECK(q[1] == doctest::Approx(0.04));
  CHECK_THROWS_AS(bh_fdr({0.5, 1.5}), std::domain_error);
}

TEST_CASE("BH q-values are monotone in the p-values") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 30;
    std::vector<double> p(m);
    for (auto& x : p) x = u(rng) * (trial % 2 ? 0.1 : 1.0);
    const auto q = bh_fdr(p);
    const auto qy = by_fdr(p);
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(q[i] >= p[i]);
      CHECK(q[i] <= 1.0);
      CHECK(qy[i] == doctest::Approx(std::min(1.0, q[i] * by_factor(m))));
      for (std::size_t j = 0; j < m; ++j) {
        if (p[i] < p[j]) CHECK(q[i] <= q[j]);
      }
    }
  }
}

TEST_CASE("linear regression") {
  const auto r = linear_regression({22.93, 21.82, 27.90, 36.74, 35.91, 39.50}, {43.1, 37.6, 27.9, 24.3, 20.4, 21.3});
  CHECK(r.slope == doctest::Approx(-1.1242254567418672).epsilon(1e-12));
  CHECK(r.intercept == doctest::Approx(63.726144067649514).epsilon(1e-12));
  CHECK(r.r == doctest::Approx(-0.920967876556297).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.009122294458114272).epsilon(1e-9));
  CHECK_THROWS_AS(linear_regression({1, 1, 1}, {1, 2, 3}), std::domain_error);
  CHECK_THROWS_AS(linear_regression({1, 2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("kappa statistics") {
  const std::vector<int> r1 = {0, 0, 1, 1, 2, 2, 0, 1, 2, 2};
  const std::vector<int> r2 = {0, 1, 1, 2, 2, 1, 0, 0, 2, 2};
  CHECK(cohen_kappa(r1, r2) == doctest::Approx(0.3939393939393939).epsilon(1e-12));
  CHECK(cohen_kappa(r1, r2, KappaWeighting::Linear) == doctest::Approx(0.5555555555555556).epsilon(1e-12));
  CHECK(cohen_kappa(r1, r2, KappaWeighting::Quadratic) == doctest::Approx(0.7101449275362319).epsilon(1e-12));
  // 2x2 table with 40 / 10 / 20 / 30.
  std::vector<int> a, b;
  auto push = [&](int x, int y, int n) {
    for (int i = 0; i < n; ++i) a.push_back(x), b.push_back(y);
  };
  push(0, 0, 40);
  push(0, 1, 10);
  push(1, 0, 20);
  push(1, 1, 30);
  CHECK(cohen_kappa(a, b) == doctest::Approx(0.40).epsilon(1e-12));
  CHECK(cohen_kappa({1, 1}, {1, 1}) == 1.0);
  CHECK_THROWS_AS(cohen_kappa({0}, {0, 1}), std::invalid_argument);

  CHECK(fleiss_kappa({{3, 0, 0}, {1, 2, 0}, {0, 1, 2}, {1, 1, 1}}) ==
        doctest::Approx(0.10638297872340421).epsilon(1e-12));
  CHECK_THROWS_AS(fleiss_kappa({{3, 0}, {1, 1}}), std::domain_error);
}

TEST_CASE("counter-based draws") {
  const auto key = stream_key(42, 0);
  const std::vector<std::size_t> expected = {7, 5, 8, 3, 1};
  for (std::size_t j = 0; j < expected.size(); ++j) CHECK(draw_index(key, j, 10) == expected[j]);
}

namespace {

const std::vector<double> kFixture = {0.13, 0.27, 0.31, 0.44, 0.58, 0.92, 1.37, 2.05, 3.61, 5.89};

double mean(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("BCa matches the direct oracle on the ten-point fixture") {
  const auto r = bca_bootstrap(kFixture, mean);
  CHECK(r.z0 == doctest::Approx(0.06521853970954372).epsilon(1e-9));
  CHECK(r.acceleration == doctest::Approx(0.0773247382908695).epsilon(1e-9));
  CHECK(std::abs(r.ci.lower - 0.7560972418135443) < 1e-9);
  CHECK(std::abs(r.ci.upper - 3.187597617366986) < 1e-9);
  CHECK(r.resamples_used == 2000);
}

TEST_CASE("BCa is bit-identical across runs and job counts") {
  BootstrapOptions one;
  const auto a = bca_bootstrap(kFixture, mean, one);
  const auto b = bca_bootstrap(kFixture, mean, one);
  for (unsigned jobs : {2u, 3u, 4u, 8u}) {
    BootstrapOptions o;
    o.jobs = jobs;
    const auto c = bca_bootstrap(kFixture, mean, o);
    CHECK(c.ci.lower == a.ci.lower);
    CHECK(c.ci.upper == a.ci.upper);
    CHECK(c.z0 == a.z0);
  }
  CHECK(a.ci.lower == b.ci.lower);
  CHECK(a.ci.upper == b.ci.upper);
  BootstrapOptions other;
  other.seed = 43;
  CHECK(bca_bootstrap(kFixture, mean, other).ci.lower != a.ci.lower);
}

TEST_CASE("BCa on constant data is degenerate") {
  const auto r = bca_bootstrap(std::vector<double>(12, 0.5), mean);
  CHECK(r.ci.lower == 0.5);
  CHECK(r.ci.upper == 0.5);
  CHECK(r.point == 0.5);
}

TEST_CASE("BCa cluster resampling keeps clusters whole") {
  // Items 0-2 in cluster "a" all score 1, items 3-5 in "b" score 0. Every
  // resample is an integer mix of whole clusters, so the mean is k / 2.
  const std::vector<std::string> keys = {"a", "a", "a", "b", "b", "b"};
  const std::vector<double> v = {1, 1, 1, 0, 0, 0};
  bool fractional = false;
  const auto stat = [&](const std::vector<std::size_t>& idx) {
    double s = 0;
    for (auto i : idx) s += v[i];
    const double m = s / static_cast<double>(idx.size());
    if (m != 0.0 && m != 0.5 && m != 1.0) fractional = true;
    return m;
  };
  const auto r = bca_bootstrap(v.size(), stat, {}, &keys);
  CHECK_FALSE(fractional);
  CHECK(r.point == 0.5);
  std::vector<std::string> wrong = {"a"};
  CHECK_THROWS_AS(bca_bootstrap(v.size(), stat, {}, &wrong), std::invalid_argument);
}
