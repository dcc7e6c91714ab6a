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

#include "trigfluct/coeffs.hpp"
#include "trigfluct/hermite.hpp"

namespace trigfluct {

struct VariancePrediction {
  double sigma_phi_sq = 0.0;
  double kurtosis_correction = 0.0;
  double total = 0.0;       // sigma_phi_sq + kurtosis_correction
  double tail_bound = 0.0;  // contribution the truncated series can still hide
  int k_max_used = 0;
};

// integral over R of (sin x / x)^k via the finite alternating sum
//   pi / (2^{k-1} (k-1)!) * sum_{j<=k/2} (-1)^j C(k,j) (k-2j)^{k-1},
// evaluated in exact integer arithmetic (the terms grow like k^k and cancel
// almost completely). Memoized.
double sinc_moment_closed(int k);

// Independent quadrature route: adaptive panels on [0, X] plus an analytic
// oscillatory tail, accurate to the absolute tolerance.
double sinc_moment_quadrature(int k, double tol);

// integral over R of |sin x / x|^k; coincides with sinc_moment for even k.
double sinc_abs_moment(int k, double tol);

// sigma_q^2 = (q!/2pi) * integral of sinc^q, the limit variance of the q-th
// chaos component. Defined for q >= 2 (the first chaos is identically zero).
double sigma_q_sq(int q);

struct SigmaPhi {
  double value = 0.0;
  double tail_bound = 0.0;
};

// sigma_phi^2 = sum_{k>=2} c_k^2 sigma_k^2 over the stored coefficients; the
// reported tail uses sigma_k^2 <= k!/2.
SigmaPhi sigma_phi_sq(const HermiteSeries& s);

// (1/2) c_2^2 (E a^4 - 3): the non-universal shift of the limit variance.
double kurtosis_correction(const HermiteSeries& s,
                           const CoefficientDistribution& dist);

VariancePrediction predict(const HermiteSeries& s,
                           const CoefficientDistribution& dist);

// Exact finite-n variance p!^2 n E[ E_X[e_{n,p}]^2 ] of the p-th projected
// chaos, computed by exact quadrature; distribution-free for unit-variance
// coefficients.
double chaos_variance_exact(int n, int p);

// Exact finite-n variance of the full statistic for Gaussian coefficients:
// sum_{q>=2} c_q^2 q! * dirichlet_power_mean(n, q).
double gaussian_finite_n_variance(const HermiteSeries& s, int n);

}  // namespace trigfluct
