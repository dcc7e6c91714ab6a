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
#include "trigfluct/trigpoly.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "trigfluct/rng.hpp"
#include "trigfluct/util.hpp"

namespace trigfluct {
namespace {

void check_poly(const TrigPoly& p) {
  if (p.a.empty() || p.a.size() != p.b.size()) {
    throw std::invalid_argument("TrigPoly: a and b must have equal positive length");
  }
}

// FFTW plan creation is not thread safe; execution through fftw_execute_dft
// with caller-owned buffers is. One plan per transform size, created under a
// lock with FFTW_UNALIGNED so any properly typed buffer is acceptable.
fftw_plan plan_for_size(int m) {
  static std::mutex mu;
  static std::map<int, fftw_plan> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // Planned out of place because execution is out of place; new-array
  // execution requires the same in-place-ness as the planned arrays.
  std::vector<std::complex<double>> scratch_in(static_cast<std::size_t>(m));
  std::vector<std::complex<double>> scratch_out(static_cast<std::size_t>(m));
  fftw_plan plan = fftw_plan_dft_1d(
      m, reinterpret_cast<fftw_complex*>(scratch_in.data()),
      reinterpret_cast<fftw_complex*>(scratch_out.data()), FFTW_BACKWARD,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw std::runtime_error("eval_grid: FFTW plan failed");
  return cache.emplace(m, plan).first->second;
}

}  // namespace

double eval(const TrigPoly& p, double x) {
  check_poly(p);
  const int n = p.n();
  NeumaierSum acc;
  for (int k = 1; k <= n; ++k) {
    acc.add(p.a[static_cast<std::size_t>(k) - 1] * std::cos(k * x) +
            p.b[static_cast<std::size_t>(k) - 1] * std::sin(k * x));
  }
  return acc.value() / std::sqrt(static_cast<double>(n));
}

std::vector<double> eval_grid(const TrigPoly& p, int m) {
  check_poly(p);
  if (m < 1) throw std::invalid_argument("eval_grid: m must be positive");
  const int n = p.n();
  // With c_k = a_k - i b_k, S_n(x_j) = n^{-1/2} Re sum_k c_k e^{i k x_j}, and
  // on the equispaced grid e^{i k x_j} only depends on k mod m. Fold the
  // coefficients into m bins and take one backward transform.
  std::vector<std::complex<double>> in(static_cast<std::size_t>(m));
  for (int k = 1; k <= n; ++k) {
    in[static_cast<std::size_t>(k % m)] +=
        std::complex<double>(p.a[static_cast<std::size_t>(k) - 1],
                             -p.b[static_cast<std::size_t>(k) - 1]);
  }
  std::vector<std::complex<double>> out(static_cast<std::size_t>(m));
  fftw_execute_dft(plan_for_size(m), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> values(static_cast<std::size_t>(m));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < m; ++j) {
    values[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j)].real() * scale;
  }
  return values;
}

std::vector<double> eval_grid_direct(const TrigPoly& p, int m) {
  check_poly(p);
  if (m < 1) throw std::invalid_argument("eval_grid_direct: m must be positive");
  const int n = p.n();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> values(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double x = kTwoPi * j / m;
    const double c1 = std::cos(x);
    const double s1 = std::sin(x);
    double ck = 1.0, sk = 0.0;  // cos(kx), sin(kx) starting at k=0
    NeumaierSum acc;
    for (int k = 1; k <= n; ++k) {
      const double c = ck * c1 - sk * s1;
      const double s = sk * c1 + ck * s1;
      acc.add(p.a[static_cast<std::size_t>(k) - 1] * c +
              p.b[static_cast<std::size_t>(k) - 1] * s);
      ck = c;
      sk = s;
    }
    values[static_cast<std::size_t>(j)] = acc.value() * scale;
  }
  return values;
}

double quadrature_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("quadrature_mean: empty grid");
  return neumaier_total(values) / static_cast<double>(values.size());
}

double second_moment_closed_form(const TrigPoly& p) {
  check_poly(p);
  NeumaierSum acc;
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    acc.add(0.5 * (p.a[k] * p.a[k] + p.b[k] * p.b[k]));
  }
  return acc.value() / static_cast<double>(p.n());
}

double dirichlet(int n, double x) {
  if (n < 1) throw std::invalid_argument("dirichlet: n must be positive");
  // Reduce to r in [-pi, pi] before scaling by n. Without this, x near a
  // nonzero multiple of 2*pi puts an O(n|x|*eps) rounding error into the
  // sin(n*x/2) argument that the small denominator then amplifies; after
  // reduction the ratio is accurate to a few ulp uniformly in n.
  const double r = std::remainder(x, kTwoPi);
  const double half = 0.5 * r;
  const double denom = std::sin(half);
  if (std::abs(denom) < 1e-8) {
    // Near r = 0 the closed form is 0/0; the direct sum is cheap and exact
    // there.
    NeumaierSum acc;
    for (int k = 1; k <= n; ++k) acc.add(std::cos(k * r));
    return acc.value() / n;
  }
  return std::cos((n + 1) * half) * std::sin(n * half) / (n * denom);
}

double dirichlet_power_mean(int n, int q) {
  if (n < 1) throw std::invalid_argument("dirichlet_power_mean: n must be positive");
  if (q < 1) throw std::invalid_argument("dirichlet_power_mean: q must be >= 1");
  // D_n^q is a trig polynomial of degree qn; qn+1 nodes integrate it exactly.
  const std::int64_t needed = static_cast<std::int64_t>(q) * n + 1;
  if (needed > kGridCap) {
    throw std::invalid_argument("dirichlet_power_mean: grid of " +
                                std::to_string(needed) + " nodes exceeds cap " +
                                std::to_string(kGridCap));
  }
  const int m = next_fast_size(static_cast<int>(needed));
  const double mean = deterministic_mean(m, 0, [n, q, m](std::int64_t j) {
    return pow_int(dirichlet(n, kTwoPi * static_cast<double>(j) / m), q);
  });
  return n * mean;
}

TripleDirichletResult triple_dirichlet_estimate(int n, std::int64_t samples,
                                                std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("triple_dirichlet_estimate: n must be positive");
  if (samples < 1000) {
    throw std::invalid_argument("triple_dirichlet_estimate: need at least 1000 samples");
  }
  const double n_sq = static_cast<double>(n) * n;
  const auto draw = [n, n_sq, seed](std::int64_t i) {
    rng::Philox gen(seed, static_cast<std::uint64_t>(i));
    const double x1 = kTwoPi * gen.uniform();
    const double x2 = kTwoPi * gen.uniform();
    const double y1 = kTwoPi * gen.uniform();
    const double y2 = kTwoPi * gen.uniform();
    return n_sq * std::abs(dirichlet(n, x1 - y1) * dirichlet(n, x2 - y2) *
                           dirichlet(n, x1 - x2));
  };
  const double mean = deterministic_mean(samples, 0, draw);
  const double mean_sq = deterministic_mean(
      samples, 0, [&draw](std::int64_t i) { const double v = draw(i); return v * v; });
  const double var = std::max(0.0, mean_sq - mean * mean) *
                     (static_cast<double>(samples) / (samples - 1));
  TripleDirichletResult r;
  r.value = mean;
  r.se = std::sqrt(var / static_cast<double>(samples));
  return r;
}

double newton_sum(const TrigPoly& p, int order, double x) {
  check_poly(p);
  if (order < 1) throw std::invalid_argument("newton_sum: order must be >= 1");
  const int n = p.n();
  NeumaierSum acc;
  for (int k = 1; k <= n; ++k) {
    acc.add(pow_int(p.a[static_cast<std::size_t>(k) - 1] * std::cos(k * x) +
                        p.b[static_cast<std::size_t>(k) - 1] * std::sin(k * x),
                    order));
  }
  return acc.value() / std::pow(static_cast<double>(n), 0.5 * order);
}

}  // namespace trigfluct
