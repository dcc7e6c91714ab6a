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
#include "trigfluct/symfun.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <type_traits>

#include "trigfluct/hermite.hpp"
#include "trigfluct/util.hpp"

namespace trigfluct {
namespace {

void collect_partitions(int remaining, int max_part, std::vector<int>& current,
                        std::vector<Partition>& out) {
  if (remaining == 0) {
    Partition parts;
    for (std::size_t i = 0; i < current.size();) {
      std::size_t j = i;
      while (j < current.size() && current[j] == current[i]) ++j;
      parts.emplace_back(current[i], static_cast<int>(j - i));
      i = j;
    }
    out.push_back(std::move(parts));
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    collect_partitions(remaining - part, part, current, out);
    current.pop_back();
  }
}

Rational rational_from_double(double x) {
  if (x == 0.0) return Rational(0);
  if (!std::isfinite(x)) throw std::invalid_argument("cannot convert non-finite value");
  int exp2 = 0;
  const double frac = std::frexp(x, &exp2);
  const auto mantissa = static_cast<long long>(std::ldexp(frac, 53));
  exp2 -= 53;
  Rational r(mantissa);
  boost::multiprecision::cpp_int shift = 1;
  shift <<= (exp2 >= 0 ? exp2 : -exp2);
  if (exp2 >= 0) {
    r *= Rational(shift);
  } else {
    r /= Rational(shift);
  }
  return r;
}

void check_coeffs(const TrigPoly& poly, const char* who) {
  if (poly.a.empty() || poly.a.size() != poly.b.size()) {
    throw std::invalid_argument(std::string(who) +
                                ": a and b must have equal positive length");
  }
}

template <class T>
double residual_scale(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return std::abs(static_cast<double>(v));
  } else {
    return std::abs(v);
  }
}

// Runs both identity checks for p = 1..p_max on exact or float scalars with
// one split at p_max shared by every p.
template <class T>
VerifyReport run_identity_checks(const std::vector<T>& values, int p_max) {
  VerifyReport report;
  report.ok = true;
  const std::vector<T> n_sums = power_sums(values, p_max);
  const NewtonGirardSplit<T> split = split_MR(n_sums, p_max);
  std::vector<T> hermite_at_n1(static_cast<std::size_t>(p_max) + 1);
  for (int p = 0; p <= p_max; ++p) {
    hermite_at_n1[static_cast<std::size_t>(p)] = hermite_eval_t<T>(p, n_sums[0]);
  }
  const T one_minus_n2 =
      p_max >= 2 ? T(1) - n_sums[1] : T(0);
  for (int p = 1; p <= p_max; ++p) {
    const T lhs =
        hermite_at_n1[static_cast<std::size_t>(p)] / detail::factorial_t<T>(p);

    T rhs_magic = T(0);
    T weight = T(1);
    for (int k = 0; 2 * k <= p; ++k) {
      if (k > 0) {
        weight *= one_minus_n2;
        weight /= T(-2 * k);
      }
      rhs_magic += weight * (split.e[static_cast<std::size_t>(p - 2 * k)] -
                             split.R[static_cast<std::size_t>(p - 2 * k)]);
    }

    T rhs_pre = split.e[static_cast<std::size_t>(p)] -
                split.R[static_cast<std::size_t>(p)];
    weight = T(1);
    for (int k = 1; 2 * k <= p; ++k) {
      weight *= one_minus_n2;
      weight /= T(2 * k);
      rhs_pre -= weight * hermite_at_n1[static_cast<std::size_t>(p - 2 * k)] /
                 detail::factorial_t<T>(p - 2 * k);
    }

    const auto record = [&](const char* tag, const T& rhs) {
      const T diff = lhs - rhs;
      const double scaled = residual_scale(diff) / (1.0 + residual_scale(lhs));
      bool pass = false;
      if constexpr (std::is_same_v<T, Rational>) {
        pass = (diff == 0);
      } else {
        pass = (scaled <= 1e-9);
      }
      if (scaled > report.worst_residual || (!pass && report.ok)) {
        report.worst_residual = scaled;
        report.worst_p = p;
        char buf[128];
        std::snprintf(buf, sizeof buf, "p=%d %s residual %.3e", p, tag, scaled);
        report.detail = buf;
      }
      if (!pass) report.ok = false;
    };
    record("magic", rhs_magic);
    record("premagic", rhs_pre);
  }
  if (report.detail.empty()) report.detail = "all identities hold";
  return report;
}

}  // namespace

namespace detail {

std::uint64_t partition_denominator(const Partition& parts) {
  std::uint64_t d = 1;
  for (const auto& [j, mult] : parts) {
    for (int i = 2; i <= mult; ++i) d *= static_cast<std::uint64_t>(i);
    for (int r = 0; r < mult; ++r) d *= static_cast<std::uint64_t>(j);
  }
  return d;
}

}  // namespace detail

const std::vector<Partition>& partitions_of(int p) {
  if (p < 1 || p > kMaxSymOrder) {
    throw std::invalid_argument("partitions_of: p must be in [1, 20]");
  }
  static std::mutex mu;
  static std::map<int, std::vector<Partition>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  std::vector<Partition> out;
  std::vector<int> current;
  collect_partitions(p, p, current, out);
  return cache.emplace(p, std::move(out)).first->second;
}

VerifyReport verify_magic(const std::vector<double>& x, int p_max, bool exact) {
  if (p_max < 1 || p_max > kMaxSymOrder) {
    throw std::invalid_argument("verify_magic: p_max must be in [1, 20]");
  }
  if (x.empty()) throw std::invalid_argument("verify_magic: empty input");
  if (exact) {
    std::vector<Rational> values;
    values.reserve(x.size());
    for (double v : x) values.push_back(rational_from_double(v));
    return run_identity_checks(values, p_max);
  }
  return run_identity_checks(x, p_max);
}

double script_remainder(const TrigPoly& poly, int p_order, int grid_m) {
  check_coeffs(poly, "script_remainder");
  if (p_order < 3) {
    throw std::invalid_argument("script_remainder: defined for p >= 3 only");
  }
  if (p_order > kMaxSymOrder) {
    throw std::invalid_argument("script_remainder: order capped at 20");
  }
  const int n = poly.n();
  if (static_cast<std::int64_t>(grid_m) <=
      static_cast<std::int64_t>(p_order) * n) {
    throw std::invalid_argument(
        "script_remainder: grid_m must exceed p_order * n for exact averaging");
  }
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  return deterministic_mean(grid_m, 0, [&poly, p_order, grid_m, n,
                                        inv_sqrt_n](std::int64_t j) {
    const double x = kTwoPi * static_cast<double>(j) / grid_m;
    std::vector<NeumaierSum> acc(static_cast<std::size_t>(p_order));
    for (int k = 1; k <= n; ++k) {
      const double t = poly.a[static_cast<std::size_t>(k) - 1] * std::cos(k * x) +
                       poly.b[static_cast<std::size_t>(k) - 1] * std::sin(k * x);
      double tp = t;
      for (int q = 0; q < p_order; ++q) {
        acc[static_cast<std::size_t>(q)].add(tp);
        tp *= t;
      }
    }
    std::vector<double> n_sums(static_cast<std::size_t>(p_order));
    double scale = inv_sqrt_n;
    for (int q = 0; q < p_order; ++q) {
      n_sums[static_cast<std::size_t>(q)] =
          acc[static_cast<std::size_t>(q)].value() * scale;
      scale *= inv_sqrt_n;
    }
    const NewtonGirardSplit<double> split = split_MR(n_sums, p_order);
    double value = -split.R[static_cast<std::size_t>(p_order)];
    double weight = 1.0;
    for (int k = 1; 2 * k <= p_order; ++k) {
      weight *= 1.0 - n_sums[1];
      weight /= static_cast<double>(-2 * k);
      value += weight * (split.e[static_cast<std::size_t>(p_order - 2 * k)] -
                         split.R[static_cast<std::size_t>(p_order - 2 * k)]);
    }
    return value;
  });
}

double sup_second_newton_deviation(const TrigPoly& poly, int grid_m) {
  check_coeffs(poly, "sup_second_newton_deviation");
  const int n = poly.n();
  if (grid_m < 4 * n + 1) {
    throw std::invalid_argument("sup_second_newton_deviation: need grid_m >= 4n+1");
  }
  const auto deviation = [&poly](double x) {
    return std::abs(1.0 - newton_sum(poly, 2, x));
  };
  std::vector<double> d(static_cast<std::size_t>(grid_m));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int j = 0; j < grid_m; ++j) {
    d[static_cast<std::size_t>(j)] = deviation(kTwoPi * j / grid_m);
  }
  double best = -1.0;
  double best_x = 0.0;
  for (int j = 0; j < grid_m; ++j) {
    if (d[static_cast<std::size_t>(j)] > best) {
      best = d[static_cast<std::size_t>(j)];
      best_x = kTwoPi * j / grid_m;
    }
  }
  // N_2 is a degree-2n trig polynomial, so the grid already localizes the
  // argmax to one spacing; two refinement sweeps tighten the value.
  double half_width = kTwoPi / grid_m;
  for (int round = 0; round < 2; ++round) {
    const int points = 64;
    double round_best = best;
    double round_x = best_x;
    for (int i = 0; i <= points; ++i) {
      const double x = best_x - half_width + 2.0 * half_width * i / points;
      const double v = deviation(x);
      if (v > round_best) {
        round_best = v;
        round_x = x;
      }
    }
    best = round_best;
    best_x = round_x;
    half_width = 2.0 * half_width / points;
  }
  return best;
}

}  // namespace trigfluct
