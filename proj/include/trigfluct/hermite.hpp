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

#include <functional>
#include <string>
#include <vector>

namespace trigfluct {

// Probabilists' convention throughout: H_0 = 1, H_1 = x,
// H_{q+1} = x H_q - q H_{q-1}, orthogonal for the N(0,1) weight with
// E[H_q^2] = q!. The physicists' family h_n(x) = 2^{n/2} H_n(sqrt(2) x)
// appears in this codebase only inside the Gauss-Hermite node construction.

// Works for any ring-like scalar (double, exact rationals, ...).
template <class T>
T hermite_eval_t(int q, const T& x) {
  T h_prev = T(1);
  if (q == 0) return h_prev;
  T h = x;
  for (int k = 1; k < q; ++k) {
    T h_next = x * h - T(k) * h_prev;
    h_prev = h;
    h = h_next;
  }
  return h;
}

double hermite_eval(int q, double x);

// H_0(x), ..., H_{q_max}(x) in one recurrence pass.
std::vector<double> hermite_eval_sequence(int q_max, double x);

struct HermiteSeries {
  std::vector<double> c;  // c[k] multiplies H_k; empty means the zero series
  // Upper bound on sum_{k > K} c_k^2 k! for the represented function when the
  // stored coefficients are a truncation; 0 when the series is exact.
  double tail_weight = 0.0;

  int max_index() const noexcept { return static_cast<int>(c.size()) - 1; }
  // Largest k with c_k != 0, or -1 for the zero series.
  int degree() const noexcept {
    for (int k = max_index(); k >= 0; --k)
      if (c[static_cast<std::size_t>(k)] != 0.0) return k;
    return -1;
  }
};

double series_eval(const HermiteSeries& s, double x);
double gaussian_mean(const HermiteSeries& s);

// Finite-truncation diagnostic sum_{k<=K} |c_k| k! A^k for the summability
// condition on admissible test functions. Reported only, never a gate.
double star_diagnostic(const HermiteSeries& s, double a);

struct GaussHermiteRule {
  std::vector<double> node;    // quadrature nodes for weight e^{-x^2/2}/sqrt(2 pi)
  std::vector<double> weight;  // positive, sums to 1
};

// Cached per order; exact for polynomials of degree <= 2*order - 1.
const GaussHermiteRule& gauss_hermite(int order);

// c_k = (1/k!) * integral of phi(x) H_k(x) against the standard Gaussian,
// k = 0..K, by Gauss-Hermite quadrature. Requires quad_order >= 2K + 2.
HermiteSeries hermite_coefficients(const std::function<double(double)>& phi,
                                   int k_max, int quad_order);

struct TestFunction {
  std::string label;
  std::function<double(double)> evaluator;
  HermiteSeries series;
  double mean = 0.0;         // gamma(phi), the standard Gaussian mean
  bool exact_series = false; // true when the series is the function, exactly
};

// phi_spec grammar: x^2 | x^4 | hermite:q | cos:t | exp:alpha | series:<path>.
// series:<path> reads a two-column CSV "k,c_k" with a header line; indices not
// listed default to 0.
TestFunction builtin(const std::string& phi_spec);

}  // namespace trigfluct
