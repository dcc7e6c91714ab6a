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
#include <vector>

namespace trigfluct {

// S_n(x) = n^{-1/2} sum_{k=1}^n a_k cos(kx) + b_k sin(kx), with a_k stored at
// a[k-1] and b_k at b[k-1].
struct TrigPoly {
  std::vector<double> a;
  std::vector<double> b;

  int n() const { return static_cast<int>(a.size()); }
};

// Largest grid anyone is allowed to ask for. Exact quadrature of D_n^q or
// e_{n,p} needs qn+1 nodes, so this caps qn at about 4e6.
inline constexpr int kGridCap = 1 << 22;

double eval(const TrigPoly& p, double x);

// Values of S_n at x_j = 2*pi*j/m, j = 0..m-1, via an FFT over the folded
// coefficient array. Matches pointwise eval to 1e-10*(1+n) per node.
std::vector<double> eval_grid(const TrigPoly& p, int m);

// Plain O(m*n) loop over nodes. Reference implementation for eval_grid; the
// benchmark target compares the two.
std::vector<double> eval_grid_direct(const TrigPoly& p, int m);

// Arithmetic mean of grid samples. Equals the integral mean (1/2pi) * integral
// over [0, 2pi) exactly whenever the sampled function is a trigonometric
// polynomial of degree < m.
double quadrature_mean(std::span<const double> values);

// E_X[S_n^2] = (1/n) sum_k (a_k^2 + b_k^2)/2.
double second_moment_closed_form(const TrigPoly& p);

// Normalized Dirichlet kernel D_n(x) = (1/n) sum_{k=1}^n cos(kx).
double dirichlet(int n, double x);

// n * E_X[D_n(X)^q] by exact quadrature on qn+1 (or more) nodes.
double dirichlet_power_mean(int n, int q);

struct TripleDirichletResult {
  double value = 0.0;
  double se = 0.0;
};

// Monte Carlo estimate of n^2 * E|D_n(X1-Y1) D_n(X2-Y2) D_n(X1-X2)| over four
// independent uniform angles. Deterministic in (n, samples, seed).
TripleDirichletResult triple_dirichlet_estimate(int n, std::int64_t samples,
                                                std::uint64_t seed);

// N_{n,order}(x) = n^{-order/2} sum_k (a_k cos(kx) + b_k sin(kx))^order.
double newton_sum(const TrigPoly& p, int order, double x);

}  // namespace trigfluct
