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
#include "trigfluct/util.hpp"

#include <stdexcept>

namespace trigfluct {

double neumaier_total(std::span<const double> xs) noexcept {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

int next_fast_size(int m) {
  if (m < 1) throw std::invalid_argument("next_fast_size: m must be positive");
  for (int candidate = m;; ++candidate) {
    int r = candidate;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    while (r % 5 == 0) r /= 5;
    if (r == 1) return candidate;
  }
}

}  // namespace trigfluct
