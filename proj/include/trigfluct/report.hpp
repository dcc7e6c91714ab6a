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

#include <span>
#include <string>
#include <vector>

#include "trigfluct/mc.hpp"

namespace trigfluct {

// Two columns "replica,value", one row per sample, 17 significant digits so
// parsing the file reproduces the doubles bitwise.
void emit_csv(std::span<const double> samples, const std::string& path);
std::vector<double> parse_samples_csv(const std::string& path);

// Fixed key set in fixed order: n, replicas, dist, phi, seed, grid_m,
// sample_variance, target_variance, target_kind, zscore, ks_statistic,
// skewness, excess_kurtosis, seconds. Everything except seconds is a pure
// function of the inputs.
void emit_summary_json(const SimulationConfig& cfg, const McSummary& summary,
                       const std::string& path);

// 800x600 histogram, 60 bins over [mean - 4 sd, mean + 4 sd], with the
// N(0, sigma^2) density overlaid as expected bin counts. sigma_overlay <= 0
// suppresses the overlay; zero-spread samples collapse to a single bar.
// Byte-deterministic for fixed inputs.
void emit_histogram_svg(std::span<const double> samples, double sigma_overlay,
                        const std::string& path);

}  // namespace trigfluct
