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
#include "trigfluct/hermite.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "trigfluct/util.hpp"

namespace trigfluct {
namespace {

constexpr int kMaxHermiteOrder = 170;  // k! overflows double beyond this

double parse_real(const std::string& s, const char* what) {
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

HermiteSeries read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("series: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("series: '" + path + "' is empty (header required)");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "k,c_k") {
    throw std::runtime_error("series: '" + path + "' must start with the header k,c_k");
  }
  std::vector<std::pair<int, double>> entries;
  int max_k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("series: bad line '" + line + "' (expected k,c_k)");
    }
    const long k = std::stol(line.substr(0, comma));
    if (k < 0 || k > kMaxHermiteOrder) {
      throw std::runtime_error("series: index out of range in '" + line + "'");
    }
    const double c = parse_real(line.substr(comma + 1), "series coefficient");
    entries.emplace_back(static_cast<int>(k), c);
    max_k = std::max(max_k, static_cast<int>(k));
  }
  HermiteSeries s;
  s.c.assign(static_cast<std::size_t>(max_k) + 1, 0.0);
  for (const auto& [k, c] : entries) s.c[static_cast<std::size_t>(k)] = c;
  return s;
}

}  // namespace

double hermite_eval(int q, double x) {
  if (q < 0) throw std::invalid_argument("hermite_eval: q must be >= 0");
  return hermite_eval_t<double>(q, x);
}

std::vector<double> hermite_eval_sequence(int q_max, double x) {
  if (q_max < 0) throw std::invalid_argument("hermite_eval_sequence: q_max must be >= 0");
  std::vector<double> h(static_cast<std::size_t>(q_max) + 1);
  h[0] = 1.0;
  if (q_max >= 1) h[1] = x;
  for (int k = 1; k < q_max; ++k) {
    h[static_cast<std::size_t>(k) + 1] =
        x * h[static_cast<std::size_t>(k)] - k * h[static_cast<std::size_t>(k) - 1];
  }
  return h;
}

double series_eval(const HermiteSeries& s, double x) {
  if (s.c.empty()) return 0.0;
  NeumaierSum acc;
  acc.add(s.c[0]);
  double h_prev = 1.0;  // H_0
  double h = x;         // H_1
  for (int k = 1; k <= s.max_index(); ++k) {
    acc.add(s.c[static_cast<std::size_t>(k)] * h);
    const double h_next = x * h - static_cast<double>(k) * h_prev;
    h_prev = h;
    h = h_next;
  }
  return acc.value();
}

double gaussian_mean(const HermiteSeries& s) { return s.c.empty() ? 0.0 : s.c[0]; }

double star_diagnostic(const HermiteSeries& s, double a) {
  if (a <= 0.0) throw std::invalid_argument("star_diagnostic: A must be positive");
  NeumaierSum acc;
  double k_factorial = 1.0, a_pow = 1.0;
  for (int k = 0; k <= s.max_index(); ++k) {
    if (k > 0) {
      k_factorial *= static_cast<double>(k);
      a_pow *= a;
    }
    acc.add(std::abs(s.c[static_cast<std::size_t>(k)]) * k_factorial * a_pow);
  }
  return acc.value();
}

const GaussHermiteRule& gauss_hermite(int order) {
  if (order < 1 || order > 512) {
    throw std::invalid_argument("gauss_hermite: order must be in [1, 512]");
  }
  static std::mutex mu;
  static std::map<int, GaussHermiteRule> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  // Golub-Welsch on the Jacobi matrix of the monic probabilists' family
  // (p_{k+1} = x p_k - k p_{k-1}): zero diagonal, off-diagonal sqrt(k).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const double b = std::sqrt(static_cast<double>(i));
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("gauss_hermite: eigensolver failed");
  }
  GaussHermiteRule rule;
  rule.node.resize(static_cast<std::size_t>(order));
  rule.weight.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    rule.node[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weight[static_cast<std::size_t>(i)] = v0 * v0;  // total mass is 1
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

HermiteSeries hermite_coefficients(const std::function<double(double)>& phi,
                                   int k_max, int quad_order) {
  if (k_max < 0 || k_max > kMaxHermiteOrder) {
    throw std::invalid_argument("hermite_coefficients: k_max out of range");
  }
  if (quad_order < 2 * k_max + 2) {
    throw std::invalid_argument(
        "hermite_coefficients: quad_order must be >= 2*k_max + 2");
  }
  const GaussHermiteRule& rule = gauss_hermite(quad_order);
  const std::size_t n_nodes = rule.node.size();
  std::vector<double> phi_at(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) phi_at[i] = phi(rule.node[i]);

  HermiteSeries s;
  s.c.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
  double k_factorial = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) k_factorial *= static_cast<double>(k);
    NeumaierSum acc;
    for (std::size_t i = 0; i < n_nodes; ++i) {
      acc.add(rule.weight[i] * phi_at[i] * hermite_eval(k, rule.node[i]));
    }
    s.c[static_cast<std::size_t>(k)] = acc.value() / k_factorial;
  }
  return s;
}

TestFunction builtin(const std::string& phi_spec) {
  TestFunction f;
  f.label = phi_spec;
  if (phi_spec == "x^2") {
    f.series.c = {1.0, 0.0, 1.0};
    f.mean = 1.0;
    f.exact_series = true;
    f.evaluator = [](double x) { return x * x; };
    return f;
  }
  if (phi_spec == "x^4") {
    f.series.c = {3.0, 0.0, 6.0, 0.0, 1.0};
    f.mean = 3.0;
    f.exact_series = true;
    f.evaluator = [](double x) { return x * x * x * x; };
    return f;
  }
  const auto starts_with = [&phi_spec](const char* p) {
    return phi_spec.rfind(p, 0) == 0;
  };
  if (starts_with("hermite:")) {
    const std::string arg = phi_spec.substr(8);
    std::size_t used = 0;
    long q = -1;
    try {
      q = std::stol(arg, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != arg.size() || q < 0 || q > kMaxHermiteOrder) {
      throw std::invalid_argument("hermite:q needs an integer q in [0, 170]");
    }
    f.series.c.assign(static_cast<std::size_t>(q) + 1, 0.0);
    f.series.c[static_cast<std::size_t>(q)] = 1.0;
    f.mean = (q == 0) ? 1.0 : 0.0;
    f.exact_series = true;
    f.evaluator = [q](double x) { return hermite_eval(static_cast<int>(q), x); };
    return f;
  }
  if (starts_with("cos:")) {
    const double t = parse_real(phi_spec.substr(4), "cos frequency");
    f.evaluator = [t](double x) { return std::cos(t * x); };
    f.series = hermite_coefficients(f.evaluator, 64, 160);
    f.mean = std::exp(-0.5 * t * t);
    f.exact_series = false;
    // c_k^2 k! = t^{2k} e^{-t^2}/k! for even k, so the weight beyond K is
    // at most (t^2)^{K+1}/(K+1)!.
    const int kK = f.series.max_index();
    f.series.tail_weight =
        t == 0.0 ? 0.0
                 : std::exp((kK + 1) * std::log(t * t) - std::lgamma(kK + 2.0));
    return f;
  }
  if (starts_with("exp:")) {
    const double alpha = parse_real(phi_spec.substr(4), "exp rate");
    f.evaluator = [alpha](double x) { return std::exp(alpha * x); };
    f.series = hermite_coefficients(f.evaluator, 64, 160);
    f.mean = std::exp(0.5 * alpha * alpha);
    f.exact_series = false;
    const int kK = f.series.max_index();
    f.series.tail_weight =
        alpha == 0.0
            ? 0.0
            : std::exp(2.0 * alpha * alpha + (kK + 1) * std::log(alpha * alpha) -
                       std::lgamma(kK + 2.0));
    return f;
  }
  if (starts_with("series:")) {
    f.series = read_series_csv(phi_spec.substr(7));
    f.mean = gaussian_mean(f.series);
    f.exact_series = true;
    const HermiteSeries series_copy = f.series;
    f.evaluator = [series_copy](double x) { return series_eval(series_copy, x); };
    return f;
  }
  throw std::invalid_argument(
      "unknown test function '" + phi_spec +
      "' (expected x^2|x^4|hermite:q|cos:t|exp:alpha|series:<path>)");
}

}  // namespace trigfluct
