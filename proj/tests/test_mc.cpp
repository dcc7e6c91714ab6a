/*
 * Copyright (C) 2026 trigfluct contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "trigfluct/coeffs.hpp"
#include "trigfluct/hermite.hpp"
#include "trigfluct/mc.hpp"
#include "trigfluct/rng.hpp"

using namespace trigfluct;

namespace {

SimulationConfig base_config(int n, int replicas, const char* dist, const char* phi,
                             std::uint64_t seed) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.replicas = replicas;
  cfg.dist = CoefficientDistribution::parse(dist);
  cfg.phi = builtin(phi);
  cfg.master_seed = seed;
  return cfg;
}

// Inverse standard normal CDF by bisection; plenty for test construction.
double normal_quantile(double p) {
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("runs are bitwise independent of worker count") {
  SimulationConfig cfg = base_config(8, 64, "gaussian", "x^2", 3);
  cfg.workers = 1;
  const RunResult serial = run(cfg);
  cfg.workers = 0;  // all threads
  const RunResult parallel = run(cfg);

  REQUIRE(serial.samples.size() == parallel.samples.size());
  for (std::size_t i = 0; i < serial.samples.size(); ++i) {
    CHECK(serial.samples[i] == parallel.samples[i]);
  }
  CHECK(serial.summary.sample_mean == parallel.summary.sample_mean);
  CHECK(serial.summary.sample_variance == parallel.summary.sample_variance);
  CHECK(serial.summary.variance_se == parallel.summary.variance_se);
  CHECK(serial.summary.skewness == parallel.summary.skewness);
  CHECK(serial.summary.excess_kurtosis == parallel.summary.excess_kurtosis);
  CHECK(serial.summary.ks_statistic == parallel.summary.ks_statistic);
  CHECK(serial.summary.zscore == parallel.summary.zscore);
}

TEST_CASE("replicas match run_replica one by one") {
  const SimulationConfig cfg = base_config(6, 16, "uniform", "x^2", 11);
  const RunResult r = run(cfg);
  for (int i = 0; i < 16; ++i) {
    CHECK(r.samples[static_cast<std::size_t>(i)] == run_replica(cfg, i));
  }
}

TEST_CASE("rademacher with phi x^2 is degenerate at exactly zero") {
  const SimulationConfig cfg = base_config(16, 200, "rademacher", "x^2", 7);
  const RunResult r = run(cfg);
  for (double v : r.samples) CHECK(v == 0.0);
  CHECK(r.summary.sample_variance == 0.0);
  CHECK(r.summary.target_variance == 0.0);
  CHECK(r.summary.zscore == 0.0);
  CHECK(r.summary.ks_statistic == 0.0);  // degenerate laws coincide
}

TEST_CASE("first hermite chaos is identically zero") {
  const SimulationConfig cfg = base_config(12, 50, "gaussian", "hermite:1", 19);
  const RunResult r = run(cfg);
  for (double v : r.samples) CHECK(v == 0.0);
}

TEST_CASE("degree one gaussian replica in closed form") {
  // For n = 1 and phi = x^2 the statistic is (a^2 + b^2)/2 - 1 with (a, b)
  // the replica's coefficient stream in draw order.
  const SimulationConfig cfg = base_config(1, 4, "gaussian", "x^2", 123);
  for (int i = 0; i < 4; ++i) {
    rng::Philox g(123, static_cast<std::uint64_t>(i));
    const double a = g.normal();
    const double b = g.normal();
    const double expect = 0.5 * (a * a + b * b) - 1.0;
    CHECK(run_replica(cfg, i) == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("draw_poly interleaves coefficients in stream order") {
  const auto dist = CoefficientDistribution::gaussian();
  const TrigPoly p = draw_poly(dist, 3, 55, 2);
  rng::Philox g(55, 2);
  for (int k = 0; k < 3; ++k) {
    CHECK(p.a[static_cast<std::size_t>(k)] == g.normal());
    CHECK(p.b[static_cast<std::size_t>(k)] == g.normal());
  }
}

TEST_CASE("gaussian targets use the exact finite n variance") {
  const SimulationConfig cfg = base_config(5, 32, "gaussian", "x^2", 2);
  const RunResult r = run(cfg);
  CHECK(r.summary.target_kind == "exact_finite_n");
  CHECK(r.summary.target_variance == doctest::Approx(1.0).epsilon(1e-12));

  const SimulationConfig cfg2 = base_config(5, 32, "uniform", "x^2", 2);
  const RunResult r2 = run(cfg2);
  CHECK(r2.summary.target_kind == "asymptotic");
  CHECK(r2.summary.target_variance == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("automatic grids") {
  // polynomial phi: smallest transform-friendly grid covering degree*n
  const SimulationConfig cfg = base_config(7, 8, "gaussian", "x^2", 9);
  const RunResult r = run(cfg);
  CHECK(r.summary.grid_m >= 2 * 7 + 1);
  CHECK(r.summary.grid_converged);

  // explicit grid request is honored
  SimulationConfig fixed = cfg;
  fixed.grid_m = 45;
  const RunResult rf = run(fixed);
  CHECK(rf.summary.grid_m == 45);

  // non-polynomial phi: doubling search reports convergence
  const SimulationConfig cfg2 = base_config(6, 8, "gaussian", "cos:0.5", 9);
  const RunResult r2 = run(cfg2);
  CHECK(r2.summary.grid_converged);
  CHECK(r2.summary.grid_m >= 4 * 6 + 1);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(run(base_config(0, 10, "gaussian", "x^2", 1)), std::invalid_argument);
  CHECK_THROWS_AS(run(base_config(4, 1, "gaussian", "x^2", 1)), std::invalid_argument);
  CHECK_THROWS_AS(run_replica(base_config(4, 8, "gaussian", "x^2", 1), 8),
                  std::invalid_argument);
}

TEST_CASE("ks statistic properties") {
  // all-zero sample against N(0,1): F(0) = 1/2, so D = 1/2
  const std::vector<double> zeros(100, 0.0);
  CHECK(ks_statistic(zeros, 1.0) == doctest::Approx(0.5).epsilon(1e-15));

  // plug-in quantiles at (i + 1/2)/M sit within 1/(2M) of the CDF
  const int m = 500;
  std::vector<double> q(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    q[static_cast<std::size_t>(i)] = 2.0 * normal_quantile((i + 0.5) / m);
  }
  CHECK(ks_statistic(q, 2.0) < 0.5 / m + 1e-9);

  // doubling samples and sigma together changes nothing
  std::vector<double> doubled = q;
  for (double& v : doubled) v *= 2.0;
  CHECK(ks_statistic(doubled, 4.0) == ks_statistic(q, 2.0));

  CHECK_THROWS_AS(ks_statistic(q, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ks_statistic(std::span<const double>{}, 1.0), std::invalid_argument);
}

TEST_CASE("variance zscore") {
  McSummary s;
  s.sample_variance = 1.2;
  s.variance_se = 0.1;
  CHECK(variance_zscore(s, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  s.variance_se = 0.0;
  s.sample_variance = 0.0;
  CHECK(variance_zscore(s, 0.0) == 0.0);
  s.sample_variance = 0.5;
  CHECK_THROWS_AS(variance_zscore(s, 0.0), std::invalid_argument);
}

TEST_CASE("scan derives one seed per degree") {
  SimulationConfig base = base_config(1, 24, "gaussian", "x^2", 77);
  const std::vector<ScanRow> rows = scan(base, {4, 8});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 4);
  CHECK(rows[1].n == 8);

  SimulationConfig single = base;
  single.n = 8;
  single.master_seed = rng::derive_seed(77, 8);
  const RunResult direct = run(single);
  CHECK(rows[1].sample_variance == direct.summary.sample_variance);
  CHECK(rows[1].target == direct.summary.target_variance);
  CHECK(rows[1].ks == direct.summary.ks_statistic);

  CHECK(scan(base, {}).empty());
}

TEST_CASE("summary moments against a direct computation") {
  const SimulationConfig cfg = base_config(4, 500, "gaussian", "x^2", 31);
  const RunResult r = run(cfg);
  const auto& v = r.samples;
  const double m = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= m;
  double d2 = 0.0, d3 = 0.0, d4 = 0.0;
  for (double x : v) {
    const double d = x - mean;
    d2 += d * d;
    d3 += d * d * d;
    d4 += d * d * d * d;
  }
  const double var_unbiased = d2 / (m - 1.0);
  const double mu2 = d2 / m, mu3 = d3 / m, mu4 = d4 / m;
  CHECK(r.summary.sample_mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(r.summary.sample_variance == doctest::Approx(var_unbiased).epsilon(1e-12));
  CHECK(r.summary.skewness ==
        doctest::Approx(mu3 / std::pow(mu2, 1.5)).epsilon(1e-10));
  CHECK(r.summary.excess_kurtosis ==
        doctest::Approx(mu4 / (mu2 * mu2) - 3.0).epsilon(1e-10));
  const double se_expect =
      std::sqrt((mu4 - var_unbiased * var_unbiased * (m - 3.0) / (m - 1.0)) / m);
  CHECK(r.summary.variance_se == doctest::Approx(se_expect).epsilon(1e-10));
  CHECK(r.summary.replicas == 500);
  CHECK(r.summary.seconds >= 0.0);
}
