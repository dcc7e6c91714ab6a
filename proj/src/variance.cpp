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
#include "trigfluct/variance.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

#include "trigfluct/symfun.hpp"
#include "trigfluct/trigpoly.hpp"
#include "trigfluct/util.hpp"

namespace trigfluct {
namespace {

using boost::multiprecision::cpp_int;

constexpr double kPi = 3.14159265358979323846264338328;
constexpr int kMaxSincOrder = 4096;
constexpr int kMaxFactorialOrder = 170;

double factorial_d(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double sinc_pow(double x, int k) {
  const double s = sinc(x);
  const double mag = std::pow(std::abs(s), static_cast<double>(k));
  return (s < 0.0 && k % 2 != 0) ? -mag : mag;
}

struct QuadBudget {
  std::int64_t used = 0;
  std::int64_t cap = 50'000'000;

  void spend(std::int64_t amount) {
    used += amount;
    if (used > cap) {
      throw std::runtime_error("sinc quadrature: evaluation budget exceeded");
    }
  }
};

template <class F>
double simpson_recurse(const F& f, double a, double fa, double mid, double fmid,
                       double b, double fb, double whole, double tol, int depth,
                       QuadBudget& budget) {
  const double lm = 0.5 * (a + mid);
  const double rm = 0.5 * (mid + b);
  budget.spend(2);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (mid - a) / 6.0 * (fa + 4.0 * flm + fmid);
  const double right = (b - mid) / 6.0 * (fmid + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth >= 48) {
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, fa, lm, flm, mid, fmid, left, 0.5 * tol,
                         depth + 1, budget) +
         simpson_recurse(f, mid, fmid, rm, frm, b, fb, right, 0.5 * tol,
                         depth + 1, budget);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        QuadBudget& budget) {
  budget.spend(3);
  const double fa = f(a);
  const double mid = 0.5 * (a + b);
  const double fmid = f(mid);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fmid + fb);
  return simpson_recurse(f, a, fa, mid, fmid, b, fb, whole, tol, 0, budget);
}

// integral_X^inf e^{iax} x^{-p} dx by repeated integration by parts:
// term_{l+1} = term_l * (p+l)/(iaX), remainder after the last kept term is
// bounded by that term's magnitude. Throws if the asymptotic series bottoms
// out above tol.
std::complex<double> oscillatory_tail(double a, int p, double big_x,
                                      double tol) {
  double bound = std::pow(big_x, 1.0 - p) / (p - 1);
  if (bound <= tol) return {0.0, 0.0};
  std::complex<double> term =
      -std::polar(1.0, a * big_x) /
      (std::complex<double>(0.0, a) * std::pow(big_x, static_cast<double>(p)));
  std::complex<double> sum{0.0, 0.0};
  for (int l = 0; l < 400; ++l) {
    if (std::abs(term) >= bound) break;  // series started diverging
    sum += term;
    bound = std::abs(term);
    if (bound <= tol) return sum;
    term *= std::complex<double>(0.0, -static_cast<double>(p + l) / (a * big_x));
  }
  throw std::runtime_error("sinc quadrature: oscillatory tail cannot reach tolerance");
}

// integral_X^inf (sin x / x)^k dx: expand sin^k into harmonics, integrate each
// against x^{-k} analytically.
double signed_tail(int k, double big_x, double tol) {
  const int m = k / 2;
  // w_j = C(2m, m-j)/4^m (even k) or C(2m+1, m-j)/4^m (odd k), by downward
  // ratio recurrence from the central value; all ratios stay in [0, 1].
  double w = 1.0;
  for (int i = 1; i <= m; ++i) w *= (2.0 * i - 1.0) / (2.0 * i);
  NeumaierSum total;
  if (k % 2 == 0) {
    // sin^{2m} = w_0 + 2 sum_{j=1}^m (-1)^j w_j cos(2jx)
    total.add(w * std::pow(big_x, 1.0 - k) / (k - 1));
    const double tol_each = 0.5 * tol / std::max(1, m);
    for (int j = 1; j <= m; ++j) {
      w *= static_cast<double>(m - j + 1) / static_cast<double>(m + j);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double harmonic =
          oscillatory_tail(2.0 * j, k, big_x, tol_each / std::max(2.0 * w, 1e-300))
              .real();
      total.add(2.0 * sign * w * harmonic);
    }
  } else {
    // sin^{2m+1} = sum_{j=0}^m (-1)^j w_j sin((2j+1)x)
    w *= (2.0 * m + 1.0) / (m + 1.0);
    const double tol_each = tol / (m + 1);
    for (int j = 0; j <= m; ++j) {
      if (j > 0) w *= static_cast<double>(m - j + 1) / static_cast<double>(m + j + 1);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double harmonic =
          oscillatory_tail(2.0 * j + 1.0, k, big_x, tol_each / std::max(w, 1e-300))
              .imag();
      total.add(sign * w * harmonic);
    }
  }
  return total.value();
}

// Euler-Maclaurin evaluation of sum_{j>=j0} j^{-k}.
double zeta_tail(int k, int j0) {
  NeumaierSum s;
  const int direct_until = j0 + 200;
  for (int j = j0; j < direct_until; ++j) {
    s.add(std::pow(static_cast<double>(j), -static_cast<double>(k)));
  }
  const double t = static_cast<double>(direct_until);
  s.add(std::pow(t, 1.0 - k) / (k - 1));
  s.add(0.5 * std::pow(t, -static_cast<double>(k)));
  s.add(k / 12.0 * std::pow(t, -static_cast<double>(k) - 1.0));
  return s.value();
}

}  // namespace

double sinc_moment_closed(int k) {
  if (k < 2 || k > kMaxSincOrder) {
    throw std::invalid_argument("sinc_moment_closed: k must be in [2, 4096]");
  }
  static std::mutex mu;
  static std::map<int, double> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  cpp_int sum = 0;
  cpp_int binom = 1;  // C(k, j)
  for (int j = 0; 2 * j <= k; ++j) {
    if (j > 0) {
      binom *= (k - j + 1);
      binom /= j;
    }
    if (k - 2 * j == 0) continue;
    cpp_int base = k - 2 * j;
    cpp_int term = binom * boost::multiprecision::pow(base, static_cast<unsigned>(k - 1));
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  cpp_int denom = 1;
  denom <<= (k - 1);
  for (int i = 2; i <= k - 1; ++i) denom *= i;
  const Rational ratio(sum, denom);
  const double value = kPi * static_cast<double>(ratio);
  return cache.emplace(k, value).first->second;
}

double sinc_moment_quadrature(int k, double tol) {
  if (k < 2 || k > kMaxSincOrder) {
    throw std::invalid_argument("sinc_moment_quadrature: k must be in [2, 4096]");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("sinc_moment_quadrature: tol must be positive");
  }
  const int big_x = std::max(50, 3 * k);
  QuadBudget budget;
  const double panel_tol = 0.25 * tol / big_x;  // head gets tol/2 of the total
  NeumaierSum head;
  const auto f = [k](double x) { return sinc_pow(x, k); };
  for (int i = 0; i < big_x; ++i) {
    head.add(adaptive_simpson(f, i, i + 1.0, panel_tol, budget));
  }
  const double tail = signed_tail(k, static_cast<double>(big_x), 0.25 * tol);
  return 2.0 * (head.value() + tail);
}

double sinc_abs_moment(int k, double tol) {
  if (k < 2 || k > kMaxSincOrder) {
    throw std::invalid_argument("sinc_abs_moment: k must be in [2, 4096]");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("sinc_abs_moment: tol must be positive");
  }
  if (k % 2 == 0) return sinc_moment_quadrature(k, tol);

  // Odd k: integrate |sin x|^k x^{-k} period by period, then bracket the tail
  // between the two constant-x endpoints of each period. The bracket width
  // telescopes to A_k (J pi)^{-k} with A_k the per-period |sin|^k mass.
  const double a_k = std::exp(0.5 * std::log(kPi) +
                              std::lgamma(0.5 * (k + 1)) - std::lgamma(0.5 * k + 1.0));
  const double half_tol = 0.5 * tol;
  const int j_floor = static_cast<int>(std::ceil(std::max(50.0, 3.0 * k) / kPi));
  const int j_bracket = static_cast<int>(
      std::ceil(std::pow(a_k / half_tol, 1.0 / k) / kPi)) + 1;
  const int periods = std::max(j_floor, j_bracket);

  QuadBudget budget;
  const double panel_tol = 0.25 * half_tol / periods;
  const auto f = [k](double x) { return std::abs(sinc_pow(x, k)); };
  NeumaierSum head;
  for (int j = 0; j < periods; ++j) {
    head.add(adaptive_simpson(f, j * kPi, (j + 1) * kPi, panel_tol, budget));
  }
  const double s_hi = std::pow(kPi, -static_cast<double>(k)) * zeta_tail(k, periods);
  const double bracket = std::pow(periods * kPi, -static_cast<double>(k));
  const double tail = a_k * (s_hi - 0.5 * bracket);
  return 2.0 * (head.value() + tail);
}

double sigma_q_sq(int q) {
  if (q < 2) {
    throw std::invalid_argument(
        "sigma_q_sq: defined for q >= 2 (the first chaos vanishes identically)");
  }
  if (q > kMaxFactorialOrder) {
    throw std::invalid_argument("sigma_q_sq: q! overflows beyond q = 170");
  }
  return factorial_d(q) / (2.0 * kPi) * sinc_moment_closed(q);
}

SigmaPhi sigma_phi_sq(const HermiteSeries& s) {
  SigmaPhi out;
  NeumaierSum acc;
  for (int q = 2; q <= s.max_index(); ++q) {
    const double c = s.c[static_cast<std::size_t>(q)];
    if (c == 0.0) continue;
    acc.add(c * c * sigma_q_sq(q));
  }
  out.value = acc.value();
  out.tail_bound = 0.5 * s.tail_weight;
  return out;
}

double kurtosis_correction(const HermiteSeries& s,
                           const CoefficientDistribution& dist) {
  const double c2 = s.max_index() >= 2 ? s.c[2] : 0.0;
  return 0.5 * c2 * c2 * dist.excess_kurtosis();
}

VariancePrediction predict(const HermiteSeries& s,
                           const CoefficientDistribution& dist) {
  VariancePrediction p;
  const SigmaPhi sp = sigma_phi_sq(s);
  p.sigma_phi_sq = sp.value;
  p.tail_bound = sp.tail_bound;
  p.kurtosis_correction = kurtosis_correction(s, dist);
  p.total = p.sigma_phi_sq + p.kurtosis_correction;
  p.k_max_used = std::max(0, s.degree());
  return p;
}

double chaos_variance_exact(int n, int p) {
  if (n < 1) throw std::invalid_argument("chaos_variance_exact: n must be positive");
  if (p < 2 || p > kMaxSymOrder) {
    throw std::invalid_argument("chaos_variance_exact: p must be in [2, 20]");
  }
  const std::int64_t needed = static_cast<std::int64_t>(p) * n + 1;
  if (needed > kGridCap) {
    throw std::invalid_argument("chaos_variance_exact: grid cap exceeded");
  }
  const int m = next_fast_size(static_cast<int>(needed));
  // Averaging E_X E_Y over the joint translation-invariant law collapses to a
  // single average of e_p evaluated on pure cosines.
  const double mean = deterministic_mean(m, 0, [n, p, m](std::int64_t jj) {
    const double x = kTwoPi * static_cast<double>(jj) / m;
    std::vector<NeumaierSum> acc(static_cast<std::size_t>(p));
    for (int k = 1; k <= n; ++k) {
      const double c = std::cos(k * x);
      double cp = c;
      for (int i = 0; i < p; ++i) {
        acc[static_cast<std::size_t>(i)].add(cp);
        cp *= c;
      }
    }
    std::vector<double> sums(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) sums[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i)].value();
    return elementary_from_power_sums(sums, p)[static_cast<std::size_t>(p)];
  });
  const double pf = factorial_d(p);
  return pf * pf * std::pow(static_cast<double>(n), 1.0 - p) * mean;
}

double gaussian_finite_n_variance(const HermiteSeries& s, int n) {
  if (n < 1) {
    throw std::invalid_argument("gaussian_finite_n_variance: n must be positive");
  }
  NeumaierSum acc;
  for (int q = 2; q <= s.max_index(); ++q) {
    const double c = s.c[static_cast<std::size_t>(q)];
    if (c == 0.0) continue;
    if (q > kMaxFactorialOrder) {
      throw std::invalid_argument("gaussian_finite_n_variance: q! overflows beyond q = 170");
    }
    acc.add(c * c * factorial_d(q) * dirichlet_power_mean(n, q));
  }
  return acc.value();
}

}  // namespace trigfluct
