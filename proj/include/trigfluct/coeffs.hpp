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
#include <string>
#include <utility>
#include <vector>

#include "trigfluct/rng.hpp"

namespace trigfluct {

// A symmetric, unit-variance coefficient law with closed-form 4th and 6th
// moments. The non-universal part of the limit variance enters exactly
// through m4; m6 must be finite for the general CLT to apply.
class CoefficientDistribution {
 public:
  enum class Kind { gaussian, rademacher, uniform_pm_sqrt3, discrete_symmetric };

  static CoefficientDistribution gaussian();
  static CoefficientDistribution rademacher();
  static CoefficientDistribution uniform_pm_sqrt3();
  // points: (value, probability) pairs on the non-negative half-line; the
  // mirror atoms at -value are implied. Probabilities are normalized, then
  // unit variance is enforced to 1e-12. Throws std::invalid_argument on a
  // negative support point, non-positive probability, or wrong variance.
  static CoefficientDistribution discrete_symmetric(
      std::vector<std::pair<double, double>> points);

  // CLI grammar: "gaussian" | "rademacher" | "uniform" |
  // "discrete:v1:p1,v2:p2,...".
  static CoefficientDistribution parse(const std::string& spec);

  Kind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }

  // Exact moment of the given order; only orders 2, 4, 6 are supported.
  double moment(int order) const;
  double excess_kurtosis() const noexcept { return m4_ - 3.0; }

  // One draw from an explicit stream.
  double draw(rng::Philox& g) const;

 private:
  CoefficientDistribution(Kind kind, std::string label, double m4, double m6)
      : kind_(kind), label_(std::move(label)), m4_(m4), m6_(m6) {}

  Kind kind_;
  std::string label_;
  double m4_;
  double m6_;
  // discrete_symmetric only: mirrored atoms and their cumulative probabilities.
  std::vector<double> atom_value_;
  std::vector<double> atom_cum_;
};

// count i.i.d. draws, deterministic in (dist, count, stream_seed).
std::vector<double> sample(const CoefficientDistribution& dist,
                           std::int64_t count, std::uint64_t stream_seed);

}  // namespace trigfluct
