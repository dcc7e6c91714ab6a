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
#include "trigfluct/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace trigfluct {
namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 20;
constexpr int kMarginBottom = 40;
constexpr int kBins = 60;
constexpr int kOverlayPoints = 200;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

void emit_csv(std::span<const double> samples, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "replica,value\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, samples[i]);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<double> parse_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("'" + path + "' is empty (expected a header line)");
  }
  std::vector<double> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("bad sample row '" + line + "'");
    }
    std::size_t used = 0;
    const double v = std::stod(line.substr(comma + 1), &used);
    if (used == 0 || !std::isfinite(v)) {
      throw std::runtime_error("bad sample value in '" + line + "'");
    }
    samples.push_back(v);
  }
  return samples;
}

void emit_summary_json(const SimulationConfig& cfg, const McSummary& summary,
                       const std::string& path) {
  nlohmann::ordered_json j;
  j["n"] = cfg.n;
  j["replicas"] = summary.replicas;
  j["dist"] = cfg.dist.label();
  j["phi"] = cfg.phi.label;
  j["seed"] = cfg.master_seed;
  j["grid_m"] = summary.grid_m;
  j["sample_variance"] = summary.sample_variance;
  j["target_variance"] = summary.target_variance;
  j["target_kind"] = summary.target_kind;
  j["zscore"] = summary.zscore;
  j["ks_statistic"] = summary.ks_statistic;
  j["skewness"] = summary.skewness;
  j["excess_kurtosis"] = summary.excess_kurtosis;
  j["seconds"] = summary.seconds;
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void emit_histogram_svg(std::span<const double> samples, double sigma_overlay,
                        const std::string& path) {
  if (samples.empty()) {
    throw std::invalid_argument("emit_histogram_svg: no samples");
  }
  const double m_total = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= m_total;
  double var = 0.0;
  for (double v : samples) var += (v - mean) * (v - mean);
  var /= m_total;
  const double sd = std::sqrt(var);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double base_y = kMarginTop + plot_h;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

  if (sd == 0.0) {
    // Degenerate spread: one bar at the common value, no overlay.
    const double bar_w = plot_w / kBins;
    const double x = kMarginLeft + 0.5 * (plot_w - bar_w);
    svg += "<rect x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", kMarginTop) +
           "\" width=\"" + fmt("%.2f", bar_w) + "\" height=\"" +
           fmt("%.2f", plot_h) + "\" fill=\"steelblue\"/>\n";
    svg += "<text x=\"400\" y=\"" + fmt("%.2f", base_y + 24) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">all " +
           fmt("%.6g", samples[0]) + " (" + std::to_string(samples.size()) +
           " samples)</text>\n";
  } else {
    const double lo = mean - 4.0 * sd;
    const double hi = mean + 4.0 * sd;
    const double bin_w = (hi - lo) / kBins;
    std::vector<int> counts(kBins, 0);
    for (double v : samples) {
      if (v < lo || v >= hi) continue;
      const int b = std::min(kBins - 1, static_cast<int>((v - lo) / bin_w));
      counts[static_cast<std::size_t>(b)] += 1;
    }

    std::vector<double> overlay;
    if (sigma_overlay > 0.0) {
      overlay.resize(kOverlayPoints);
      for (int i = 0; i < kOverlayPoints; ++i) {
        const double x = lo + (hi - lo) * i / (kOverlayPoints - 1);
        const double pdf = std::exp(-0.5 * x * x / (sigma_overlay * sigma_overlay)) /
                           (sigma_overlay * std::sqrt(2.0 * 3.14159265358979323846));
        overlay[static_cast<std::size_t>(i)] = m_total * bin_w * pdf;
      }
    }
    double y_max = 1.0;
    for (int c : counts) y_max = std::max(y_max, static_cast<double>(c));
    for (double e : overlay) y_max = std::max(y_max, e);
    const double y_scale = plot_h / y_max;

    const double bar_w = plot_w / kBins;
    for (int b = 0; b < kBins; ++b) {
      const int c = counts[static_cast<std::size_t>(b)];
      if (c == 0) continue;
      const double h = c * y_scale;
      svg += "<rect x=\"" + fmt("%.2f", kMarginLeft + b * bar_w) + "\" y=\"" +
             fmt("%.2f", base_y - h) + "\" width=\"" + fmt("%.2f", bar_w) +
             "\" height=\"" + fmt("%.2f", h) + "\" fill=\"steelblue\"/>\n";
    }
    if (!overlay.empty()) {
      svg += "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
      for (int i = 0; i < kOverlayPoints; ++i) {
        const double px = kMarginLeft + plot_w * i / (kOverlayPoints - 1);
        const double py = base_y - overlay[static_cast<std::size_t>(i)] * y_scale;
        if (i > 0) svg += " ";
        svg += fmt("%.2f", px) + "," + fmt("%.2f", py);
      }
      svg += "\"/>\n";
    }
    for (const auto& [frac, value] :
         {std::pair<double, double>{0.0, lo},
          std::pair<double, double>{0.5, 0.5 * (lo + hi)},
          std::pair<double, double>{1.0, hi}}) {
      svg += "<text x=\"" + fmt("%.2f", kMarginLeft + plot_w * frac) + "\" y=\"" +
             fmt("%.2f", base_y + 24) +
             "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" +
             fmt("%.3g", value) + "</text>\n";
    }
    svg += "<text x=\"" + fmt("%.2f", kMarginLeft - 8) + "\" y=\"" +
           fmt("%.2f", kMarginTop + 12) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">" +
           fmt("%.4g", y_max) + "</text>\n";
  }

  svg += "<line x1=\"" + fmt("%.2f", kMarginLeft) + "\" y1=\"" + fmt("%.2f", base_y) +
         "\" x2=\"" + fmt("%.2f", kWidth - kMarginRight) + "\" y2=\"" +
         fmt("%.2f", base_y) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt("%.2f", kMarginLeft) + "\" y1=\"" + fmt("%.2f", kMarginTop) +
         "\" x2=\"" + fmt("%.2f", kMarginLeft) + "\" y2=\"" + fmt("%.2f", base_y) +
         "\" stroke=\"black\"/>\n";
  svg += "</svg>\n";

  std::ofstream out = open_out(path);
  out << svg;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace trigfluct
