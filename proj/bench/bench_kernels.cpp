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

// Compares the production kernels against their serial reference
// implementations: grid evaluation (FFT vs direct loop) and the replica
// driver (all workers vs one). Prints timings and verifies agreement; not a
// registered test, but exits nonzero if the fast paths disagree with the
// references.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "trigfluct/coeffs.hpp"
#include "trigfluct/hermite.hpp"
#include "trigfluct/mc.hpp"
#include "trigfluct/trigpoly.hpp"
#include "trigfluct/util.hpp"

namespace {

using namespace trigfluct;
using Clock = std::chrono::steady_clock;

int g_disagreements = 0;

double time_of(const std::function<void()>& body, int reps) {
  const auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) body();
  return std::chrono::duration<double>(Clock::now() - t0).count() / reps;
}

void bench_eval_grid() {
  std::printf("grid evaluation, m = 4n+1 rounded to a 5-smooth size\n");
  std::printf("%8s %8s %12s %12s %9s %12s\n", "n", "m", "fft_s", "direct_s",
              "speedup", "max_diff");
  for (int n : {256, 1024, 4096}) {
    const TrigPoly poly =
        draw_poly(CoefficientDistribution::gaussian(), n, 31, 0);
    const int m = next_fast_size(4 * n + 1);
    const std::vector<double> fast = eval_grid(poly, m);
    const std::vector<double> slow = eval_grid_direct(poly, m);
    double max_diff = 0.0;
    for (int j = 0; j < m; ++j)
      max_diff = std::max(max_diff, std::abs(fast[j] - slow[j]));
    if (max_diff > 1e-10 * (1.0 + n)) ++g_disagreements;
    const int reps = n <= 1024 ? 50 : 10;
    const double t_fast = time_of([&] { eval_grid(poly, m); }, reps);
    const double t_slow = time_of([&] { eval_grid_direct(poly, m); }, reps);
    std::printf("%8d %8d %12.3e %12.3e %8.1fx %12.3e\n", n, m, t_fast, t_slow,
                t_slow / t_fast, max_diff);
  }
}

void bench_replicas() {
  SimulationConfig cfg;
  cfg.n = 256;
  cfg.replicas = 4000;
  cfg.dist = CoefficientDistribution::gaussian();
  cfg.phi = builtin("hermite:3");
  cfg.master_seed = 31;

  cfg.workers = 1;
  const auto t0 = Clock::now();
  const RunResult serial = run(cfg);
  const double t_serial = std::chrono::duration<double>(Clock::now() - t0).count();

  cfg.workers = 0;
  const auto t1 = Clock::now();
  const RunResult parallel = run(cfg);
  const double t_parallel = std::chrono::duration<double>(Clock::now() - t1).count();

  int diffs = 0;
  for (std::size_t i = 0; i < serial.samples.size(); ++i)
    diffs += serial.samples[i] != parallel.samples[i];
  if (diffs > 0) ++g_disagreements;

  std::printf("\nreplica driver, n=%d, %d replicas, hermite:3\n", cfg.n,
              cfg.replicas);
  std::printf("  one worker   %.3fs\n", t_serial);
  std::printf("  all workers  %.3fs  (%.1fx, %d bitwise differences)\n",
              t_parallel, t_serial / t_parallel, diffs);
}

void bench_dirichlet() {
  std::printf("\ndirichlet power mean, q = 4\n");
  std::printf("%8s %12s %18s\n", "n", "seconds", "n*E[D^q]");
  for (int n : {1024, 8192, 65536}) {
    const auto t0 = Clock::now();
    const double v = dirichlet_power_mean(n, 4);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%8d %12.3e %18.12f\n", n, secs, v);
  }
}

}  // namespace

int main() {
  bench_eval_grid();
  bench_replicas();
  bench_dirichlet();
  if (g_disagreements) {
    std::printf("\n%d kernel(s) disagree with their reference\n", g_disagreements);
    return 1;
  }
  return 0;
}
