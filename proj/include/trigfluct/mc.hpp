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
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trigfluct/coeffs.hpp"
#include "trigfluct/hermite.hpp"
#include "trigfluct/trigpoly.hpp"
#include "trigfluct/variance.hpp"

namespace trigfluct {

struct SimulationConfig {
  int n = 0;
  int replicas = 0;
  CoefficientDistribution dist = CoefficientDistribution::gaussian();
  TestFunction phi;
  // 0 selects the automatic grid: d*n+1 rounded up for a polynomial phi of
  // Hermite degree d, doubling from 4n+1 for everything else.
  int grid_m = 0;
  std::uint64_t master_seed = 0;
  int workers = 0;  // 0 = all available
};

struct McSummary {
  double sample_mean = 0.0;
  double sample_variance = 0.0;  // unbiased
  double variance_se = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_statistic = 0.0;
  int replicas = 0;
  double seconds = 0.0;
  int grid_m = 0;             // largest quadrature grid any replica used
  bool grid_converged = true; // false if the doubling search hit its cap
  double target_variance = 0.0;
  std::string target_kind;  // "exact_finite_n" or "asymptotic"
  double zscore = 0.0;
};

struct RunResult {
  std::vector<double> samples;
  McSummary summary;
};

// Coefficient draw for one replica: stream (master_seed, index), a_k and b_k
// interleaved in k order.
TrigPoly draw_poly(const CoefficientDistribution& dist, int n,
                   std::uint64_t master_seed, std::uint64_t index);

// One realization of sqrt(n) * (E_X[phi(S_n(X))] - gamma(phi)). Deterministic
// in (cfg, index) and independent of worker count.
double run_replica(const SimulationConfig& cfg, int index);

RunResult run(const SimulationConfig& cfg);

// Sup distance between the empirical CDF of the samples and the N(0, sigma^2)
// CDF.
double ks_statistic(std::span<const double> samples, double sigma);

// (sample_variance - target) / variance_se, with the 0/0 case (a degenerate
// statistic matching a zero target) defined as 0.
double variance_zscore(const McSummary& summary, double target);

struct ScanRow {
  int n = 0;
  double sample_variance = 0.0;
  double target = 0.0;
  double zscore = 0.0;
  double ks = 0.0;
};

// One run per n with seeds derived from the template's master seed, so rows
// are independent but reproducible.
std::vector<ScanRow> scan(const SimulationConfig& base,
                          const std::vector<int>& n_list);

}  // namespace trigfluct
