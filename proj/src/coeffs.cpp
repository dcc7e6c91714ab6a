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
#include "trigfluct/coeffs.hpp"

#include <cmath>
#include <stdexcept>

namespace trigfluct {
namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463415059;

double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

CoefficientDistribution CoefficientDistribution::gaussian() {
  return {Kind::gaussian, "gaussian", 3.0, 15.0};
}

CoefficientDistribution CoefficientDistribution::rademacher() {
  return {Kind::rademacher, "rademacher", 1.0, 1.0};
}

CoefficientDistribution CoefficientDistribution::uniform_pm_sqrt3() {
  // Uniform on [-sqrt(3), sqrt(3)]: m2 = 1, m4 = 9/5, m6 = 27/7.
  return {Kind::uniform_pm_sqrt3, "uniform", 9.0 / 5.0, 27.0 / 7.0};
}

CoefficientDistribution CoefficientDistribution::discrete_symmetric(
    std::vector<std::pair<double, double>> points) {
  if (points.empty()) {
    throw std::invalid_argument("discrete_symmetric: empty support");
  }
  double total_prob = 0.0;
  for (const auto& [v, p] : points) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(
          "discrete_symmetric: support points must be finite and >= 0 "
          "(mirror atoms are implied)");
    }
    if (!std::isfinite(p) || p <= 0.0) {
      throw std::invalid_argument("discrete_symmetric: probabilities must be positive");
    }
    total_prob += p;
  }

  double m2 = 0.0, m4 = 0.0, m6 = 0.0;
  for (const auto& [v, p] : points) {
    const double q = p / total_prob;
    const double v2 = v * v;
    m2 += q * v2;
    m4 += q * v2 * v2;
    m6 += q * v2 * v2 * v2;
  }
  if (std::abs(m2 - 1.0) > 1e-12) {
    throw std::invalid_argument("discrete_symmetric: variance must equal 1 (got " +
                                std::to_string(m2) + ")");
  }

  std::string label = "discrete:";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) label += ',';
    label += std::to_string(points[i].first) + ':' + std::to_string(points[i].second);
  }
  CoefficientDistribution d{Kind::discrete_symmetric, std::move(label), m4, m6};

  double cum = 0.0;
  for (const auto& [v, p] : points) {
    const double q = p / total_prob;
    if (v == 0.0) {
      d.atom_value_.push_back(0.0);
      cum += q;
      d.atom_cum_.push_back(cum);
    } else {
      d.atom_value_.push_back(v);
      cum += q / 2.0;
      d.atom_cum_.push_back(cum);
      d.atom_value_.push_back(-v);
      cum += q / 2.0;
      d.atom_cum_.push_back(cum);
    }
  }
  d.atom_cum_.back() = 1.0;
  return d;
}

CoefficientDistribution CoefficientDistribution::parse(const std::string& spec) {
  if (spec == "gaussian") return gaussian();
  if (spec == "rademacher") return rademacher();
  if (spec == "uniform") return uniform_pm_sqrt3();
  const std::string prefix = "discrete:";
  if (spec.rfind(prefix, 0) == 0) {
    std::vector<std::pair<double, double>> points;
    for (const std::string& item : split(spec.substr(prefix.size()), ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2) {
        throw std::invalid_argument("bad discrete atom '" + item +
                                    "', expected value:probability");
      }
      points.emplace_back(parse_number(parts[0], "atom value"),
                          parse_number(parts[1], "atom probability"));
    }
    auto d = discrete_symmetric(std::move(points));
    return d;
  }
  throw std::invalid_argument("unknown distribution spec '" + spec +
                              "' (expected gaussian|rademacher|uniform|discrete:...)");
}

double CoefficientDistribution::moment(int order) const {
  switch (order) {
    case 2:
      return 1.0;
    case 4:
      return m4_;
    case 6:
      return m6_;
    default:
      throw std::invalid_argument("moment: order must be 2, 4 or 6");
  }
}

double CoefficientDistribution::draw(rng::Philox& g) const {
  switch (kind_) {
    case Kind::gaussian:
      return g.normal();
    case Kind::rademacher:
      return (g.next_u64() >> 63) ? 1.0 : -1.0;
    case Kind::uniform_pm_sqrt3:
      return (2.0 * g.uniform() - 1.0) * kSqrt3;
    case Kind::discrete_symmetric: {
      const double u = g.uniform();
      for (std::size_t i = 0; i + 1 < atom_cum_.size(); ++i) {
        if (u < atom_cum_[i]) return atom_value_[i];
      }
      return atom_value_.back();
    }
  }
  return 0.0;  // unreachable
}

std::vector<double> sample(const CoefficientDistribution& dist,
                           std::int64_t count, std::uint64_t stream_seed) {
  if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
  rng::Philox g(stream_seed, 0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(dist.draw(g));
  return out;
}

}  // namespace trigfluct
