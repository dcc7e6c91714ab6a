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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace trigfluct {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Kahan-Babuska-Neumaier compensated accumulator. Summation order fixed by
// the caller; for a fixed order the result is bitwise reproducible.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double neumaier_total(std::span<const double> xs) noexcept;

// Smallest 5-smooth integer (2^a 3^b 5^c) >= m. Used to round grid sizes up
// to transform-friendly composites; exactness of the equispaced quadrature
// never depends on the rounding, only the degree bound m >= d+1 does.
int next_fast_size(int m);

// x^p by repeated multiplication, p >= 0.
inline double pow_int(double x, int p) noexcept {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

inline int resolve_workers(int workers) noexcept {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

namespace detail {
inline constexpr std::int64_t kReductionChunks = 1024;

inline std::int64_t chunk_begin(std::int64_t count, std::int64_t c) noexcept {
  return count * c / kReductionChunks;
}
}  // namespace detail

// Mean of f(0), ..., f(count-1) with a fixed chunk grid: chunks are summed
// independently (in parallel) and combined in chunk order, so the result is
// bitwise identical for every worker count, including the serial fallback.
template <class F>
double deterministic_mean(std::int64_t count, int workers, F&& f) {
  if (count <= 0) return 0.0;
  const std::int64_t chunks =
      count < detail::kReductionChunks ? count : detail::kReductionChunks;
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t lo = count * c / chunks;
    const std::int64_t hi = count * (c + 1) / chunks;
    NeumaierSum s;
    for (std::int64_t i = lo; i < hi; ++i) s.add(f(i));
    partial[static_cast<std::size_t>(c)] = s.value();
  }
  NeumaierSum total;
  for (double p : partial) total.add(p);
  return total.value() / static_cast<double>(count);
}

}  // namespace trigfluct
