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

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trigfluct/trigpoly.hpp"

namespace trigfluct {

// Exact-arithmetic mode for the symmetric-function identities. Everything in
// this header is templated over the scalar so the float path exercises the
// same code that the rational path proves correct.
using Rational = boost::multiprecision::cpp_rational;

// A partition of p as (part j, multiplicity m_j) pairs with j increasing.
using Partition = std::vector<std::pair<int, int>>;

// All partitions of p, memoized. Guarded at p <= 20: beyond that the uint64
// denominators m_j! j^{m_j} used below would overflow (20! < 2^63 < 21!).
const std::vector<Partition>& partitions_of(int p);

inline constexpr int kMaxSymOrder = 20;

template <class T>
struct NewtonGirardSplit {
  // Indexed by order 0..P. e_p = M_p + R_p; M keeps the partitions built from
  // parts 1 and 2 only, R collects every partition containing a part >= 3.
  std::vector<T> e;
  std::vector<T> M;
  std::vector<T> R;
};

// Power sums N_j = sum_i x_i^j for j = 1..p_max, returned with N_j at [j-1].
template <class T>
std::vector<T> power_sums(const std::vector<T>& x, int p_max) {
  if (p_max < 1) throw std::invalid_argument("power_sums: p_max must be >= 1");
  std::vector<T> pw = x;
  std::vector<T> sums(static_cast<std::size_t>(p_max));
  for (int j = 1; j <= p_max; ++j) {
    T s = T(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += pw[i];
      pw[i] *= x[i];
    }
    sums[static_cast<std::size_t>(j) - 1] = std::move(s);
  }
  return sums;
}

// e_0..e_P from the recurrence p e_p = sum_{i=1}^p (-1)^{i-1} e_{p-i} N_i.
template <class T>
std::vector<T> elementary_from_power_sums(const std::vector<T>& n_sums, int p_cap) {
  if (p_cap < 0 || static_cast<std::size_t>(p_cap) > n_sums.size()) {
    throw std::invalid_argument("elementary_from_power_sums: need N_1..N_P");
  }
  std::vector<T> e(static_cast<std::size_t>(p_cap) + 1);
  e[0] = T(1);
  for (int p = 1; p <= p_cap; ++p) {
    T s = T(0);
    for (int i = 1; i <= p; ++i) {
      T term = e[static_cast<std::size_t>(p - i)] * n_sums[static_cast<std::size_t>(i) - 1];
      if (i % 2 == 0) term = -term;
      s += term;
    }
    e[static_cast<std::size_t>(p)] = s / T(p);
  }
  return e;
}

namespace detail {

// prod over the partition of m_j! j^{m_j}; fits uint64 for p <= 20.
std::uint64_t partition_denominator(const Partition& parts);

template <class T>
T partition_term(const std::vector<T>& n_sums, const Partition& parts) {
  T num = T(1);
  for (const auto& [j, mult] : parts) {
    for (int r = 0; r < mult; ++r) num *= -n_sums[static_cast<std::size_t>(j) - 1];
  }
  return num / T(partition_denominator(parts));
}

template <class T>
T factorial_t(int k) {
  T f = T(1);
  for (int i = 2; i <= k; ++i) f *= T(i);
  return f;
}

}  // namespace detail

// e_p by direct enumeration of the partition sum
// e_p = (-1)^p sum_{partitions} prod_j (-N_j)^{m_j} / (m_j! j^{m_j}).
// Oracle for the recurrence; p <= 20.
template <class T>
T elementary_partition_sum(const std::vector<T>& n_sums, int p) {
  if (p < 0 || static_cast<std::size_t>(p) > n_sums.size()) {
    throw std::invalid_argument("elementary_partition_sum: need N_1..N_p");
  }
  if (p == 0) return T(1);
  T total = T(0);
  for (const Partition& parts : partitions_of(p)) {
    total += detail::partition_term(n_sums, parts);
  }
  if (p % 2 != 0) total = -total;
  return total;
}

// Splits e_p into the parts-1-and-2 piece
//   M_p = sum_{m_2 <= p/2} (-1)^{m_2} N_1^{p-2m_2} N_2^{m_2}
//         / ((p-2m_2)! m_2! 2^{m_2})
// and the remainder R_p = e_p - M_p. In rational mode R is recomputed by
// enumerating the partitions with a part >= 3 and the two must match exactly.
template <class T>
NewtonGirardSplit<T> split_MR(const std::vector<T>& n_sums, int p_cap) {
  if (p_cap > kMaxSymOrder) {
    throw std::invalid_argument("split_MR: order capped at 20");
  }
  NewtonGirardSplit<T> out;
  out.e = elementary_from_power_sums(n_sums, p_cap);
  out.M.assign(static_cast<std::size_t>(p_cap) + 1, T(0));
  out.R.assign(static_cast<std::size_t>(p_cap) + 1, T(0));
  out.M[0] = T(1);
  for (int p = 1; p <= p_cap; ++p) {
    if (p <= 2) {
      // No partition of 1 or 2 contains a part >= 3, so R vanishes by
      // convention; assigning M = e keeps that exact in float mode as well.
      out.M[static_cast<std::size_t>(p)] = out.e[static_cast<std::size_t>(p)];
      continue;
    }
    T m_val = T(0);
    for (int m2 = 0; 2 * m2 <= p; ++m2) {
      const int m1 = p - 2 * m2;
      std::uint64_t denom = 1;
      for (int i = 2; i <= m1; ++i) denom *= static_cast<std::uint64_t>(i);
      for (int i = 2; i <= m2; ++i) denom *= static_cast<std::uint64_t>(i);
      denom <<= m2;
      T term = T(1);
      for (int r = 0; r < m1; ++r) term *= n_sums[0];
      for (int r = 0; r < m2; ++r) term *= n_sums[1];
      term /= T(denom);
      if (m2 % 2 != 0) term = -term;
      m_val += term;
    }
    out.M[static_cast<std::size_t>(p)] = m_val;
    out.R[static_cast<std::size_t>(p)] =
        out.e[static_cast<std::size_t>(p)] - m_val;
  }
  if constexpr (std::is_same_v<T, Rational>) {
    for (int p = 3; p <= p_cap; ++p) {
      T direct = T(0);
      for (const Partition& parts : partitions_of(p)) {
        bool has_high_part = false;
        for (const auto& [j, mult] : parts) {
          if (j >= 3 && mult > 0) has_high_part = true;
        }
        if (has_high_part) direct += detail::partition_term(n_sums, parts);
      }
      if (p % 2 != 0) direct = -direct;
      if (direct != out.R[static_cast<std::size_t>(p)]) {
        throw std::logic_error("split_MR: R mismatch between recurrence and enumeration");
      }
    }
  }
  return out;
}

// Right-hand side of the core identity:
//   H_p(N_1)/p! = sum_{k=0}^{floor(p/2)} (-1)^k (1-N_2)^k / (2^k k!)
//                 * (e_{p-2k} - R_{p-2k}).
template <class T>
T magic_rhs(const std::vector<T>& n_sums, int p) {
  if (p < 1 || static_cast<std::size_t>(p) > n_sums.size()) {
    throw std::invalid_argument("magic_rhs: need p >= 1 and N_1..N_p");
  }
  const NewtonGirardSplit<T> s = split_MR(n_sums, p);
  T total = T(0);
  T weight = T(1);  // (-1)^k (1-N_2)^k / (2^k k!)
  for (int k = 0; 2 * k <= p; ++k) {
    if (k > 0) {
      weight *= T(1) - n_sums[1];
      weight /= T(-2 * k);
    }
    total += weight * (s.e[static_cast<std::size_t>(p - 2 * k)] -
                       s.R[static_cast<std::size_t>(p - 2 * k)]);
  }
  return total;
}

struct VerifyReport {
  bool ok = false;
  double worst_residual = 0.0;
  int worst_p = 0;
  std::string detail;
};

// Checks, for p = 1..p_max with raw power sums N_j = sum_i x_i^j:
//   (a) H_p(N_1)/p! = magic_rhs(N, p)
//   (b) H_p(N_1)/p! = e_p - sum_{k=1}^{floor(p/2)} (1-N_2)^k/(2^k k!)
//                       * H_{p-2k}(N_1)/(p-2k)!  -  R_p
// Exact mode converts the inputs to rationals (doubles convert exactly) and
// demands identity; float mode allows residual <= 1e-9 * (1 + |lhs|).
VerifyReport verify_magic(const std::vector<double>& x, int p_max, bool exact);

// The averaged remainder functional for order p >= 3:
//   E_X[ -R_{n,p} + sum_{k=1}^{floor(p/2)} (-1)^k (1-N_{n,2})^k/(2^k k!)
//        * (e_{n,p-2k} - R_{n,p-2k}) ]
// over grid_m equispaced nodes, with N_{n,j}(x) the newton_sum values of the
// polynomial. grid_m must exceed p_order * n so the average is exact.
double script_remainder(const TrigPoly& poly, int p_order, int grid_m);

// max_j |1 - N_{n,2}(x_j)| over grid_m >= 4n+1 nodes, sharpened by two local
// refinement passes around the best node.
double sup_second_newton_deviation(const TrigPoly& poly, int grid_m);

}  // namespace trigfluct
