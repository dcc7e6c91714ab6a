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
#include "trigfluct/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "trigfluct/rng.hpp"
#include "trigfluct/util.hpp"

namespace trigfluct {
namespace {

constexpr int kDoublingCap = 1 << 20;

struct ReplicaOutcome {
  double value = 0.0;
  int grid_m = 0;
  bool converged = true;
};

void validate(const SimulationConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("simulation: n must be positive");
  if (cfg.replicas < 2) throw std::invalid_argument("simulation: need at least 2 replicas");
  if (!cfg.phi.evaluator && !cfg.phi.exact_series) {
    throw std::invalid_argument("simulation: phi has no evaluator");
  }
}

double grid_mean(const TrigPoly& poly, int m,
                 const std::function<double(double)>& f) {
  const std::vector<double> values = eval_grid(poly, m);
  NeumaierSum acc;
  for (double v : values) acc.add(f(v));
  return acc.value() / static_cast<double>(m);
}

// phi given by a finite Hermite series: split by chaos order. The first chaos
// averages to zero, the second reduces to Parseval (so a Rademacher draw
// yields exactly zero), and only orders >= 3 need the quadrature grid.
ReplicaOutcome replica_exact_series(const SimulationConfig& cfg,
                                    const TrigPoly& poly) {
  const HermiteSeries& s = cfg.phi.series;
  const int degree = s.degree();
  int psi_degree = 0;
  for (int q = 3; q <= degree; ++q) {
    if (s.c[static_cast<std::size_t>(q)] != 0.0) psi_degree = q;
  }

  ReplicaOutcome out;
  if (cfg.grid_m > 0) {
    out.grid_m = cfg.grid_m;
  } else {
    const std::int64_t needed =
        static_cast<std::int64_t>(std::max(degree, 0)) * cfg.n + 1;
    if (needed > kGridCap) {
      throw std::invalid_argument("simulation: exact grid for this phi exceeds the cap");
    }
    out.grid_m = next_fast_size(static_cast<int>(needed));
  }

  NeumaierSum acc;
  if (degree >= 2 && s.c[2] != 0.0) {
    acc.add(s.c[2] * (second_moment_closed_form(poly) - 1.0));
  }
  if (psi_degree >= 3) {
    HermiteSeries psi;
    psi.c = s.c;
    for (int q = 0; q <= std::min(2, degree); ++q) psi.c[static_cast<std::size_t>(q)] = 0.0;
    acc.add(grid_mean(poly, out.grid_m,
                      [&psi](double v) { return series_eval(psi, v); }));
  }
  out.value = std::sqrt(static_cast<double>(cfg.n)) * acc.value();
  return out;
}

ReplicaOutcome replica_direct(const SimulationConfig& cfg, const TrigPoly& poly) {
  ReplicaOutcome out;
  const auto& f = cfg.phi.evaluator;
  double mean = 0.0;
  if (cfg.grid_m > 0) {
    out.grid_m = cfg.grid_m;
    mean = grid_mean(poly, cfg.grid_m, f);
  } else {
    int m = next_fast_size(4 * cfg.n + 1);
    mean = grid_mean(poly, m, f);
    out.converged = false;
    while (2 * m <= kDoublingCap) {
      m *= 2;
      const double refined = grid_mean(poly, m, f);
      const bool settled = std::abs(refined - mean) <= 1e-10 * (1.0 + std::abs(mean));
      mean = refined;
      if (settled) {
        out.converged = true;
        break;
      }
    }
    out.grid_m = m;
  }
  out.value = std::sqrt(static_cast<double>(cfg.n)) * (mean - cfg.phi.mean);
  return out;
}

ReplicaOutcome replica_outcome(const SimulationConfig& cfg, int index) {
  const TrigPoly poly = draw_poly(cfg.dist, cfg.n, cfg.master_seed,
                                  static_cast<std::uint64_t>(index));
  return cfg.phi.exact_series ? replica_exact_series(cfg, poly)
                              : replica_direct(cfg, poly);
}

double normal_cdf(double x, double sigma) {
  return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
}

}  // namespace

TrigPoly draw_poly(const CoefficientDistribution& dist, int n,
                   std::uint64_t master_seed, std::uint64_t index) {
  if (n < 1) throw std::invalid_argument("draw_poly: n must be positive");
  rng::Philox gen(master_seed, index);
  TrigPoly p;
  p.a.resize(static_cast<std::size_t>(n));
  p.b.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    p.a[static_cast<std::size_t>(k)] = dist.draw(gen);
    p.b[static_cast<std::size_t>(k)] = dist.draw(gen);
  }
  return p;
}

double run_replica(const SimulationConfig& cfg, int index) {
  validate(cfg);
  if (index < 0 || index >= cfg.replicas) {
    throw std::invalid_argument("run_replica: index out of range");
  }
  return replica_outcome(cfg, index).value;
}

RunResult run(const SimulationConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const int m_reps = cfg.replicas;
  RunResult result;
  result.samples.resize(static_cast<std::size_t>(m_reps));
  std::vector<int> grids(static_cast<std::size_t>(m_reps), 0);
  std::vector<unsigned char> converged(static_cast<std::size_t>(m_reps), 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(cfg.workers))
#endif
  for (int i = 0; i < m_reps; ++i) {
    const ReplicaOutcome out = replica_outcome(cfg, i);
    result.samples[static_cast<std::size_t>(i)] = out.value;
    grids[static_cast<std::size_t>(i)] = out.grid_m;
    converged[static_cast<std::size_t>(i)] = out.converged ? 1 : 0;
  }

  McSummary& s = result.summary;
  s.replicas = m_reps;
  s.grid_m = *std::max_element(grids.begin(), grids.end());
  s.grid_converged =
      std::all_of(converged.begin(), converged.end(), [](unsigned char c) { return c != 0; });

  const double inv_m = 1.0 / static_cast<double>(m_reps);
  s.sample_mean = neumaier_total(result.samples) * inv_m;
  NeumaierSum d2, d3, d4;
  for (double v : result.samples) {
    const double d = v - s.sample_mean;
    d2.add(d * d);
    d3.add(d * d * d);
    d4.add(d * d * d * d);
  }
  const double m2 = d2.value() * inv_m;
  const double m3 = d3.value() * inv_m;
  const double m4 = d4.value() * inv_m;
  s.sample_variance = d2.value() / static_cast<double>(m_reps - 1);
  s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  s.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
  const double se_sq =
      (m4 - s.sample_variance * s.sample_variance *
                static_cast<double>(m_reps - 3) / static_cast<double>(m_reps - 1)) *
      inv_m;
  s.variance_se = std::sqrt(std::max(0.0, se_sq));

  if (cfg.dist.kind() == CoefficientDistribution::Kind::gaussian &&
      cfg.phi.exact_series) {
    s.target_variance = gaussian_finite_n_variance(cfg.phi.series, cfg.n);
    s.target_kind = "exact_finite_n";
  } else {
    s.target_variance = predict(cfg.phi.series, cfg.dist).total;
    s.target_kind = "asymptotic";
  }
  s.zscore = variance_zscore(s, s.target_variance);
  if (s.target_variance > 0.0) {
    s.ks_statistic = ks_statistic(result.samples, std::sqrt(s.target_variance));
  } else {
    const bool all_zero = std::all_of(result.samples.begin(), result.samples.end(),
                                      [](double v) { return v == 0.0; });
    s.ks_statistic = all_zero ? 0.0 : 1.0;
  }
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

double ks_statistic(std::span<const double> samples, double sigma) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  if (!(sigma > 0.0)) throw std::invalid_argument("ks_statistic: sigma must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double inv_m = 1.0 / static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf(sorted[i], sigma);
    d = std::max(d, static_cast<double>(i + 1) * inv_m - cdf);
    d = std::max(d, cdf - static_cast<double>(i) * inv_m);
  }
  return d;
}

double variance_zscore(const McSummary& summary, double target) {
  if (summary.variance_se == 0.0) {
    if (summary.sample_variance == target) return 0.0;
    throw std::invalid_argument("variance_zscore: zero standard error with nonzero gap");
  }
  return (summary.sample_variance - target) / summary.variance_se;
}

std::vector<ScanRow> scan(const SimulationConfig& base, const std::vector<int>& n_list) {
  std::vector<ScanRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    SimulationConfig cfg = base;
    cfg.n = n;
    cfg.master_seed = rng::derive_seed(base.master_seed, static_cast<std::uint64_t>(n));
    const RunResult r = run(cfg);
    ScanRow row;
    row.n = n;
    row.sample_variance = r.summary.sample_variance;
    row.target = r.summary.target_variance;
    row.zscore = r.summary.zscore;
    row.ks = r.summary.ks_statistic;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace trigfluct
