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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigfluct/coeffs.hpp"
#include "trigfluct/hermite.hpp"
#include "trigfluct/report.hpp"
#include "trigfluct/rng.hpp"

using namespace trigfluct;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> awkward_samples() {
  rng::Philox g(2, 0);
  std::vector<double> v;
  for (int i = 0; i < 400; ++i) v.push_back(g.normal() * 1.7e-3 + 0.125);
  v.push_back(1e-17);
  v.push_back(-0.0);
  return v;
}

}  // namespace

TEST_CASE("csv round trip is bitwise exact") {
  const std::vector<double> samples = awkward_samples();
  const std::string path = "tmp_report_samples.csv";
  emit_csv(samples, path);
  const std::vector<double> back = parse_samples_csv(path);
  REQUIRE(back.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i] == samples[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("csv parser rejects junk") {
  const std::string path = "tmp_report_bad.csv";
  {
    std::ofstream out(path);
    out << "replica,value\n0,not-a-number\n";
  }
  CHECK_THROWS(parse_samples_csv(path));
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_samples_csv("does_not_exist.csv"), std::runtime_error);
}

TEST_CASE("summary json carries the fixed key set in order") {
  SimulationConfig cfg;
  cfg.n = 64;
  cfg.replicas = 1000;
  cfg.dist = CoefficientDistribution::rademacher();
  cfg.phi = builtin("x^4");
  cfg.master_seed = 42;
  McSummary s;
  s.sample_variance = 7.9;
  s.target_variance = 8.0;
  s.target_kind = "asymptotic";
  s.zscore = -0.3;
  s.ks_statistic = 0.01;
  s.skewness = 0.2;
  s.excess_kurtosis = 0.1;
  s.replicas = 1000;
  s.grid_m = 260;
  s.seconds = 1.25;

  const std::string path = "tmp_summary.json";
  emit_summary_json(cfg, s, path);
  const std::string text = slurp(path);
  const nlohmann::json j = nlohmann::json::parse(text);

  const char* keys[] = {"n",      "replicas",        "dist",
                        "phi",    "seed",            "grid_m",
                        "sample_variance", "target_variance", "target_kind",
                        "zscore", "ks_statistic",    "skewness",
                        "excess_kurtosis", "seconds"};
  REQUIRE(j.size() == 14);
  std::size_t prev = 0;
  for (const char* key : keys) {
    CAPTURE(key);
    REQUIRE(j.contains(key));
    const std::size_t pos = text.find(std::string("\"") + key + "\"");
    REQUIRE(pos != std::string::npos);
    CHECK(pos > prev);
    prev = pos;
  }
  CHECK(j["n"] == 64);
  CHECK(j["dist"] == "rademacher");
  CHECK(j["phi"] == "x^4");
  CHECK(j["seed"] == 42);
  CHECK(j["target_kind"] == "asymptotic");
  CHECK(j["sample_variance"].get<double>() == 7.9);
  std::remove(path.c_str());
}

TEST_CASE("histogram svg is byte deterministic") {
  const std::vector<double> samples = awkward_samples();
  const std::string p1 = "tmp_hist_1.svg";
  const std::string p2 = "tmp_hist_2.svg";
  emit_histogram_svg(samples, 1.0, p1);
  emit_histogram_svg(samples, 1.0, p2);
  const std::string s1 = slurp(p1);
  CHECK(s1 == slurp(p2));
  CHECK(s1.find("<svg") != std::string::npos);
  CHECK(s1.find("</svg>") != std::string::npos);
  CHECK(s1.find("polyline") != std::string::npos);  // the overlay curve
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("histogram svg without overlay omits the curve") {
  const std::vector<double> samples = awkward_samples();
  const std::string path = "tmp_hist_plain.svg";
  emit_histogram_svg(samples, 0.0, path);
  const std::string s = slurp(path);
  CHECK(s.find("polyline") == std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("degenerate histogram collapses to one bar") {
  const std::vector<double> same(250, 0.75);
  const std::string path = "tmp_hist_flat.svg";
  emit_histogram_svg(same, 0.0, path);
  const std::string s = slurp(path);
  CHECK(s.find("all ") != std::string::npos);
  CHECK(s.find("250 samples") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("histogram rejects empty input") {
  CHECK_THROWS_AS(emit_histogram_svg(std::span<const double>{}, 1.0, "unused.svg"),
                  std::invalid_argument);
}

TEST_CASE("emitters surface unwritable paths") {
  const std::vector<double> samples = {1.0, 2.0};
  CHECK_THROWS_AS(emit_csv(samples, "/nonexistent_dir/x.csv"), std::runtime_error);
  CHECK_THROWS_AS(emit_histogram_svg(samples, 0.0, "/nonexistent_dir/x.svg"),
                  std::runtime_error);
}
