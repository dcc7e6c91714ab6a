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

// Acceptance gate: one check per headline claim, fixed seeds throughout, one
// PASS/FAIL line each. Runs in a few minutes; exits nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "trigfluct/coeffs.hpp"
#include "trigfluct/hermite.hpp"
#include "trigfluct/mc.hpp"
#include "trigfluct/rng.hpp"
#include "trigfluct/symfun.hpp"
#include "trigfluct/trigpoly.hpp"
#include "trigfluct/util.hpp"
#include "trigfluct/variance.hpp"

namespace {

using namespace trigfluct;
using Clock = std::chrono::steady_clock;

int g_failed = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  if (!ok) ++g_failed;
}

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// 1. The magic and premagic identities hold exactly over the rationals for
//    random inputs, 100 trials per value count n = 1..6, orders up to 8.
void criterion_1() {
  const auto t0 = Clock::now();
  int checked = 0;
  bool ok = true;
  std::string first_failure;
  for (int n = 1; n <= 6 && ok; ++n) {
    for (int t = 0; t < 100 && ok; ++t) {
      rng::Philox g(rng::derive_seed(1, static_cast<std::uint64_t>(n)),
                    static_cast<std::uint64_t>(t));
      std::vector<double> values(static_cast<std::size_t>(n));
      for (double& v : values) v = g.normal();
      const VerifyReport r = verify_magic(values, 8, true);
      if (!r.ok) {
        ok = false;
        first_failure = r.detail;
      }
      ++checked;
    }
  }
  const double secs = seconds_since(t0);
  if (ok && secs >= 10.0) {
    ok = false;
    first_failure = "runtime over budget";
  }
  report(1, ok,
         fmt("exact symmetric-function identities, %d trials (n<=6, p<=8), "
             "zero residual, %.1fs%s%s",
             checked, secs, ok ? "" : " -- ", first_failure.c_str()));
}

// 2. Closed-form sinc moments agree with independent quadrature; the scaled
//    large-k absolute moment matches its half-line asymptote.
void criterion_2() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;

  double worst = 0.0;
  for (int k = 2; k <= 60; ++k) {
    const double diff = std::abs(sinc_moment_closed(k) - sinc_moment_quadrature(k, 1e-9));
    worst = std::max(worst, diff);
  }
  if (worst >= 1e-8) {
    ok = false;
    detail = fmt("closed vs quadrature diverge: %.3e", worst);
  }

  const double pi_err = std::abs(sinc_moment_quadrature(2, 1e-13) - std::acos(-1.0));
  if (ok && pi_err >= 1e-12) {
    ok = false;
    detail = fmt("k=2 quadrature off pi by %.3e", pi_err);
  }

  // sqrt(k) * integral over the half line tends to sqrt(3 pi/2); the full
  // integral computed here is twice the half-line one
  const double half_line = 0.5 * std::sqrt(200.0) * sinc_abs_moment(200, 1e-9);
  const double limit = std::sqrt(1.5 * std::acos(-1.0));
  const double rel = std::abs(half_line - limit) / limit;
  if (ok && rel >= 0.02) {
    ok = false;
    detail = fmt("large-k asymptote off by %.2f%%", 100.0 * rel);
  }

  const double secs = seconds_since(t0);
  if (ok && secs >= 30.0) {
    ok = false;
    detail = "runtime over budget";
  }
  if (ok) {
    detail = fmt("closed vs quadrature <= %.1e on k in [2,60]; k=2 err %.1e; "
                 "large-k asymptote off %.2f%%; %.1fs",
                 worst, pi_err, 100.0 * rel, secs);
  }
  report(2, ok, detail);
}

// 3. Exact finite-n Gaussian variance targets.
void criterion_3() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  const HermiteSeries x2 = builtin("x^2").series;
  double worst = 0.0;
  for (int n : {1, 7, 64, 511}) {
    worst = std::max(worst, std::abs(gaussian_finite_n_variance(x2, n) - 1.0));
  }
  if (worst >= 1e-12) {
    ok = false;
    detail = fmt("x^2 variance off 1 by %.3e", worst);
  }
  const double h3 = gaussian_finite_n_variance(builtin("hermite:3").series, 512);
  const double rel = std::abs(h3 - 2.25) / 2.25;
  if (ok && rel >= 0.03) {
    ok = false;
    detail = fmt("H_3 at n=512 off 9/4 by %.2f%%", 100.0 * rel);
  }
  const double secs = seconds_since(t0);
  if (ok && secs >= 60.0) {
    ok = false;
    detail = "runtime over budget";
  }
  if (ok) {
    detail = fmt("x^2 target 1 within %.1e on n in {1,7,64,511}; H_3 n=512 "
                 "within %.2f%% of 9/4; %.1fs",
                 worst, 100.0 * rel, secs);
  }
  report(3, ok, detail);
}

// 4. Gaussian Monte Carlo reproduces the finite-n normal fluctuation law for
//    the third chaos across a sweep of 20 master seeds.
void criterion_4() {
  const auto t0 = Clock::now();
  const double ks_crit = 1.63 / std::sqrt(20000.0);
  int z_pass = 0, ks_pass = 0;
  SimulationConfig cfg;
  cfg.n = 256;
  cfg.replicas = 20000;
  cfg.dist = CoefficientDistribution::gaussian();
  cfg.phi = builtin("hermite:3");
  for (int s = 1; s <= 20; ++s) {
    cfg.master_seed = static_cast<std::uint64_t>(s);
    const RunResult r = run(cfg);
    if (std::abs(r.summary.zscore) <= 3.0) ++z_pass;
    if (r.summary.ks_statistic < ks_crit) ++ks_pass;
  }
  const bool ok = z_pass >= 19 && ks_pass >= 18;
  report(4, ok,
         fmt("gaussian H_3 n=256 M=20000 over 20 seeds: |z|<=3 in %d/20 "
             "(need 19), KS<%.4f in %d/20 (need 18); %.1fs",
             z_pass, ks_crit, ks_pass, seconds_since(t0)));
}

// 5. Non-universality: the x^4 fluctuation variance depends on the
//    coefficient law exactly as predicted.
void criterion_5() {
  const auto t0 = Clock::now();
  SimulationConfig cfg;
  cfg.n = 512;
  cfg.replicas = 20000;
  cfg.phi = builtin("x^4");
  cfg.master_seed = 2026;

  cfg.dist = CoefficientDistribution::gaussian();
  const McSummary g = run(cfg).summary;
  cfg.dist = CoefficientDistribution::rademacher();
  const McSummary r = run(cfg).summary;

  const double rel_g = std::abs(g.sample_variance - 44.0) / 44.0;
  const double rel_r = std::abs(r.sample_variance - 8.0) / 8.0;
  const double gap = std::abs(g.sample_variance - r.sample_variance);
  const double gap_se = std::hypot(g.variance_se, r.variance_se);
  const bool ok = rel_g < 0.10 && rel_r < 0.10 && gap > 10.0 * gap_se;
  report(5, ok,
         fmt("x^4 n=512 M=20000: gaussian var %.2f (off 44 by %.1f%%), "
             "rademacher var %.3f (off 8 by %.1f%%), gap %.1f = %.0f se; %.1fs",
             g.sample_variance, 100.0 * rel_g, r.sample_variance, 100.0 * rel_r,
             gap, gap / gap_se, seconds_since(t0)));
}

// 6. Degenerate Rademacher x^2 statistic: every replica is the exact zero.
void criterion_6() {
  const auto t0 = Clock::now();
  SimulationConfig cfg;
  cfg.n = 256;
  cfg.replicas = 20000;
  cfg.dist = CoefficientDistribution::rademacher();
  cfg.phi = builtin("x^2");
  cfg.master_seed = 7;
  const RunResult r = run(cfg);
  int nonzero = 0;
  for (double v : r.samples) nonzero += v != 0.0;
  report(6, nonzero == 0,
         fmt("rademacher x^2: %d of %zu replicas nonzero (want 0); %.1fs",
             nonzero, r.samples.size(), seconds_since(t0)));
}

// 7. Uniform coefficients interpolate: x^2 fluctuation variance 0.4.
void criterion_7() {
  const auto t0 = Clock::now();
  SimulationConfig cfg;
  cfg.n = 256;
  cfg.replicas = 20000;
  cfg.dist = CoefficientDistribution::uniform_pm_sqrt3();
  cfg.phi = builtin("x^2");
  cfg.master_seed = 11;
  const McSummary s = run(cfg).summary;
  const double gap = std::abs(s.sample_variance - 0.4);
  const bool ok = gap <= 3.0 * s.variance_se;
  report(7, ok,
         fmt("uniform x^2 n=256 M=20000: var %.4f vs 0.4, gap %.4f <= 3 se "
             "(se %.4f); %.1fs",
             s.sample_variance, gap, s.variance_se, seconds_since(t0)));
}

// 8. Triple Dirichlet product moment decays with the degree.
void criterion_8() {
  const auto t0 = Clock::now();
  const TripleDirichletResult v64 = triple_dirichlet_estimate(64, 100000, 8);
  const TripleDirichletResult v256 = triple_dirichlet_estimate(256, 100000, 8);
  const TripleDirichletResult v1024 = triple_dirichlet_estimate(1024, 100000, 8);
  const double secs = seconds_since(t0);
  bool ok = v64.value > v256.value && v256.value > v1024.value &&
            v1024.value < 0.5 * v64.value;
  std::string detail =
      fmt("n^2 E|D D D| at n=64/256/1024: %.4f > %.4f > %.4f, n=1024 below "
          "half of n=64; %.1fs",
          v64.value, v256.value, v1024.value, secs);
  if (ok && secs >= 60.0) {
    ok = false;
    detail = "runtime over budget";
  }
  report(8, ok, detail);
}

// 9. The averaged remainder functional decays like 1/sqrt(n).
void criterion_9() {
  const auto t0 = Clock::now();
  const auto gauss = CoefficientDistribution::gaussian();
  auto averaged = [&](int n) {
    NeumaierSum acc;
    for (int i = 0; i < 50; ++i) {
      const TrigPoly poly = draw_poly(gauss, n, 99, static_cast<std::uint64_t>(i));
      const int m = next_fast_size(3 * n + 1);
      acc.add(std::sqrt(static_cast<double>(n)) *
              std::abs(script_remainder(poly, 3, m)));
    }
    return acc.value() / 50.0;
  };
  const double a16 = averaged(16);
  const double a256 = averaged(256);
  const double secs = seconds_since(t0);
  bool ok = a256 <= 0.5 * a16;
  std::string detail = fmt(
      "sqrt(n)|remainder_3| over 50 draws: n=16 -> %.4f, n=256 -> %.4f "
      "(ratio %.2f, need >= 2); %.1fs",
      a16, a256, a16 / a256, secs);
  if (ok && secs >= 60.0) {
    ok = false;
    detail = "runtime over budget";
  }
  report(9, ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failed) {
    std::printf("%d criterion(s) failed\n", g_failed);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
