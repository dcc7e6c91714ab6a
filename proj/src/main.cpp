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
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "trigfluct/coeffs.hpp"
#include "trigfluct/hermite.hpp"
#include "trigfluct/mc.hpp"
#include "trigfluct/report.hpp"
#include "trigfluct/rng.hpp"
#include "trigfluct/symfun.hpp"
#include "trigfluct/trigpoly.hpp"
#include "trigfluct/util.hpp"
#include "trigfluct/variance.hpp"

namespace {

using namespace trigfluct;

struct CommonOpts {
  int n = 0;
  int replicas = 10000;
  std::string dist = "gaussian";
  std::string phi = "x^2";
  std::uint64_t seed = 1;
  int grid = 0;
  int workers = 0;
};

SimulationConfig to_config(const CommonOpts& o) {
  SimulationConfig cfg;
  cfg.n = o.n;
  cfg.replicas = o.replicas;
  cfg.dist = CoefficientDistribution::parse(o.dist);
  cfg.phi = builtin(o.phi);
  cfg.grid_m = o.grid;
  cfg.master_seed = o.seed;
  cfg.workers = o.workers;
  return cfg;
}

void add_config_opt(CLI::App* sub) {
  sub->add_option("--config",
                  "flat key=value file; flags on the command line take precedence");
}

// CLI11 only reads a config file attached to the top-level app, but the
// interface here is one flat file per subcommand, so the file is expanded
// into ordinary tokens before parsing. Config keys already present as flags
// are dropped, which is what gives the command line precedence; unknown keys
// fail the parse like any unknown flag would.
std::vector<std::string> with_config_expanded(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (const std::string& a : args) {
    if (a == "--help" || a == "-h") return args;
  }
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string{};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) {
      throw CLI::ConfigError(path + ":" + std::to_string(lineno) +
                             ": expected key=value, got '" + line + "'");
    }
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) {
      args.push_back(flag);
      args.push_back(trim(line.substr(eq + 1)));
    }
  }
  return args;
}

void add_common(CLI::App* sub, CommonOpts& o, bool n_required, bool n_is_list,
                std::vector<int>* n_list) {
  if (n_is_list) {
    auto* opt = sub->add_option("--n", *n_list, "degrees to scan, comma separated");
    if (n_required) opt->required();
    opt->delimiter(',');
  } else {
    auto* opt = sub->add_option("--n", o.n, "polynomial degree");
    if (n_required) opt->required();
  }
  sub->add_option("--replicas", o.replicas, "Monte Carlo replicas");
  sub->add_option("--dist", o.dist,
                  "coefficient law: gaussian|rademacher|uniform|discrete:v1:p1,v2:p2,...");
  sub->add_option("--phi", o.phi,
                  "test function: x^2|x^4|hermite:q|cos:t|exp:alpha|series:<path>");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--grid", o.grid, "fixed quadrature grid size (0 = automatic)");
  sub->add_option("--workers", o.workers, "worker threads (0 = all)");
  add_config_opt(sub);
}

void print_summary(const SimulationConfig& cfg, const McSummary& s) {
  std::printf("n %d  replicas %d  dist %s  phi %s  seed %llu\n", cfg.n, s.replicas,
              cfg.dist.label().c_str(), cfg.phi.label.c_str(),
              static_cast<unsigned long long>(cfg.master_seed));
  std::printf("grid_m          %d\n", s.grid_m);
  std::printf("sample_variance %.12g\n", s.sample_variance);
  std::printf("target_variance %.12g (%s)\n", s.target_variance, s.target_kind.c_str());
  std::printf("zscore          %.6g\n", s.zscore);
  std::printf("ks_statistic    %.6g\n", s.ks_statistic);
  std::printf("skewness        %.6g\n", s.skewness);
  std::printf("excess_kurtosis %.6g\n", s.excess_kurtosis);
  std::printf("seconds         %.3f\n", s.seconds);
  if (!s.grid_converged) {
    std::fprintf(stderr, "warning: quadrature doubling hit the grid cap before converging\n");
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"fluctuation laboratory for spatial averages of random trigonometric polynomials",
               "trigfluct"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo run of the fluctuation statistic");
  CommonOpts simo;
  std::string sim_out, sim_summary, sim_svg;
  add_common(sim, simo, true, false, nullptr);
  sim->add_option("--out", sim_out, "write samples CSV here");
  sim->add_option("--summary", sim_summary, "write summary JSON here");
  sim->add_option("--svg", sim_svg, "write histogram SVG here");
  sim->callback([&] {
    const SimulationConfig cfg = to_config(simo);
    const RunResult r = run(cfg);
    print_summary(cfg, r.summary);
    if (!sim_out.empty()) emit_csv(r.samples, sim_out);
    if (!sim_summary.empty()) emit_summary_json(cfg, r.summary, sim_summary);
    if (!sim_svg.empty()) {
      const double overlay =
          r.summary.target_variance > 0.0 ? std::sqrt(r.summary.target_variance) : 0.0;
      emit_histogram_svg(r.samples, overlay, sim_svg);
    }
  });

  // scan
  auto* sc = app.add_subcommand("scan", "one run per degree with derived seeds");
  CommonOpts sco;
  std::vector<int> scan_ns;
  std::string scan_out;
  add_common(sc, sco, true, true, &scan_ns);
  sc->add_option("--out", scan_out, "write the table as CSV here");
  sc->callback([&] {
    SimulationConfig base = to_config(sco);
    base.n = 1;  // placeholder; scan() sets the real degree per row
    const std::vector<ScanRow> rows = scan(base, scan_ns);
    std::printf("%8s %18s %18s %10s %10s\n", "n", "sample_variance", "target", "zscore", "ks");
    for (const ScanRow& r : rows) {
      std::printf("%8d %18.10g %18.10g %10.4g %10.4g\n", r.n, r.sample_variance,
                  r.target, r.zscore, r.ks);
    }
    if (!scan_out.empty()) {
      std::ofstream out(scan_out);
      if (!out) throw std::runtime_error("cannot open '" + scan_out + "'");
      out << "n,sample_variance,target,zscore,ks\n";
      for (const ScanRow& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", r.n,
                      r.sample_variance, r.target, r.zscore, r.ks);
        out << buf;
      }
    }
  });

  // variance
  auto* var = app.add_subcommand("variance", "limit variance prediction for (phi, dist)");
  std::string var_phi = "x^2", var_dist = "gaussian";
  int var_n = 0;
  var->add_option("--phi", var_phi, "test function");
  var->add_option("--dist", var_dist, "coefficient law");
  var->add_option("--n", var_n, "also print the exact finite-n Gaussian variance for this degree");
  add_config_opt(var);
  var->callback([&] {
    const CoefficientDistribution dist = CoefficientDistribution::parse(var_dist);
    const TestFunction phi = builtin(var_phi);
    const VariancePrediction p = predict(phi.series, dist);
    std::printf("phi %s  dist %s\n", phi.label.c_str(), dist.label().c_str());
    std::printf("sigma_phi_sq        %.12g\n", p.sigma_phi_sq);
    std::printf("kurtosis_correction %.12g\n", p.kurtosis_correction);
    std::printf("total               %.12g\n", p.total);
    std::printf("tail_bound          %.3g\n", p.tail_bound);
    std::printf("k_max_used          %d\n", p.k_max_used);
    if (var_n > 0) {
      std::printf("gaussian_finite_n_variance(n=%d) %.12g\n", var_n,
                  gaussian_finite_n_variance(phi.series, var_n));
    }
  });

  // sinc-moments
  auto* sm = app.add_subcommand("sinc-moments", "closed-form vs quadrature sinc moments");
  int sm_kmax = 8;
  sm->add_option("--kmax", sm_kmax, "largest k (table covers k = 2..kmax)")
      ->check(CLI::Range(2, 400));
  add_config_opt(sm);
  sm->callback([&] {
    std::printf("%4s %22s %22s %12s %18s\n", "k", "closed", "quadrature", "abs_diff",
                "sigma_k_sq");
    for (int k = 2; k <= sm_kmax; ++k) {
      const double closed = sinc_moment_closed(k);
      const double quad = sinc_moment_quadrature(k, 1e-9);
      if (k <= 170) {
        std::printf("%4d %22.15g %22.15g %12.3e %18.12g\n", k, closed, quad,
                    std::abs(closed - quad), sigma_q_sq(k));
      } else {
        std::printf("%4d %22.15g %22.15g %12.3e %18s\n", k, closed, quad,
                    std::abs(closed - quad), "overflow");
      }
    }
  });

  // hermite
  auto* he = app.add_subcommand("hermite", "Hermite expansion of a test function");
  std::string he_phi = "x^4";
  int he_kmax = -1;
  he->add_option("--phi", he_phi, "test function");
  he->add_option("--kmax", he_kmax, "print coefficients up to this index (-1 = all stored)");
  add_config_opt(he);
  he->callback([&] {
    const TestFunction phi = builtin(he_phi);
    const int top = he_kmax >= 0 ? std::min(he_kmax, phi.series.max_index())
                                 : phi.series.max_index();
    std::printf("phi %s  gamma %.15g  %s\n", phi.label.c_str(), phi.mean,
                phi.exact_series ? "(exact series)" : "(numerical expansion)");
    std::printf("%4s %24s\n", "k", "c_k");
    for (int k = 0; k <= top; ++k) {
      std::printf("%4d %24.16g\n", k, phi.series.c[static_cast<std::size_t>(k)]);
    }
    std::printf("tail_weight %.3g\n", phi.series.tail_weight);
    std::printf("summability(A=1) %.6g\n", star_diagnostic(phi.series, 1.0));
  });

  // verify-identities
  auto* vi = app.add_subcommand("verify-identities",
                                "exact-arithmetic check of the symmetric-function identities");
  int vi_n = 6, vi_pmax = 8, vi_trials = 100;
  std::uint64_t vi_seed = 1;
  vi->add_option("--n", vi_n, "values per trial")->check(CLI::Range(1, 64));
  vi->add_option("--pmax", vi_pmax, "check orders 1..pmax")->check(CLI::Range(1, 20));
  vi->add_option("--trials", vi_trials, "random trials")->check(CLI::Range(1, 1000000));
  vi->add_option("--seed", vi_seed, "trial seed");
  add_config_opt(vi);
  vi->callback([&] {
    for (int t = 0; t < vi_trials; ++t) {
      rng::Philox gen(vi_seed, static_cast<std::uint64_t>(t));
      std::vector<double> values(static_cast<std::size_t>(vi_n));
      if (t % 2 == 0) {
        for (double& v : values) v = gen.normal();
      } else {
        // trig-structured values from a Rademacher draw, as they appear in
        // the polynomial setting
        const double x = kTwoPi * gen.uniform();
        const double inv = 1.0 / std::sqrt(static_cast<double>(vi_n));
        for (int k = 1; k <= vi_n; ++k) {
          const double a = (gen.next_u64() >> 63) != 0 ? 1.0 : -1.0;
          const double b = (gen.next_u64() >> 63) != 0 ? 1.0 : -1.0;
          values[static_cast<std::size_t>(k) - 1] =
              inv * (a * std::cos(k * x) + b * std::sin(k * x));
        }
      }
      const VerifyReport exact = verify_magic(values, vi_pmax, true);
      if (!exact.ok) {
        std::printf("trial %d FAILED (exact): %s\n", t, exact.detail.c_str());
        throw std::runtime_error("identity verification failed");
      }
      const VerifyReport approx = verify_magic(values, vi_pmax, false);
      if (!approx.ok) {
        std::printf("trial %d FAILED (float): %s\n", t, approx.detail.c_str());
        throw std::runtime_error("identity verification failed");
      }
    }
    std::printf("verified magic and premagic identities: %d trials, n=%d, p<=%d "
                "(exact rational + float mirror)\n",
                vi_trials, vi_n, vi_pmax);
  });

  // dirichlet
  auto* di = app.add_subcommand("dirichlet", "Dirichlet kernel power means");
  int di_n = 0, di_q = 3;
  std::int64_t di_trials = 0;
  std::uint64_t di_seed = 1;
  di->add_option("--n", di_n, "degree")->required()->check(CLI::Range(1, 1 << 21));
  di->add_option("--q", di_q, "power")->check(CLI::Range(1, 64));
  di->add_option("--trials", di_trials,
                 "if > 0, Monte Carlo samples for the triple |D| moment");
  di->add_option("--seed", di_seed, "sampling seed");
  add_config_opt(di);
  di->callback([&] {
    const double dpm = dirichlet_power_mean(di_n, di_q);
    std::printf("n %d  q %d\n", di_n, di_q);
    std::printf("n*E[D_n^q]            %.15g\n", dpm);
    double qfact = 1.0;
    for (int i = 2; i <= di_q; ++i) qfact *= i;
    std::printf("q! * n*E[D_n^q]       %.15g\n", qfact * dpm);
    if (di_trials > 0) {
      const TripleDirichletResult tr = triple_dirichlet_estimate(di_n, di_trials, di_seed);
      std::printf("n^2*E|D D D| estimate %.10g  (se %.3g, %lld samples)\n", tr.value,
                  tr.se, static_cast<long long>(di_trials));
    }
  });

  // report
  auto* rep = app.add_subcommand("report", "re-render a histogram from a samples CSV");
  std::string rep_csv, rep_summary, rep_svg;
  rep->add_option("samples", rep_csv, "samples CSV (replica,value)")->required();
  rep->add_option("--summary", rep_summary,
                  "summary JSON from the original run; its target sets the overlay");
  rep->add_option("--svg", rep_svg, "output SVG path")->required();
  add_config_opt(rep);
  rep->callback([&] {
    const std::vector<double> samples = parse_samples_csv(rep_csv);
    if (samples.empty()) throw std::runtime_error("no samples in '" + rep_csv + "'");
    double overlay = 0.0;
    if (!rep_summary.empty()) {
      std::ifstream in(rep_summary);
      if (!in) throw std::runtime_error("cannot open '" + rep_summary + "'");
      nlohmann::json j;
      in >> j;
      const double target = j.value("target_variance", 0.0);
      overlay = target > 0.0 ? std::sqrt(target) : 0.0;
    } else {
      double mean = 0.0;
      for (double v : samples) mean += v;
      mean /= static_cast<double>(samples.size());
      double var = 0.0;
      for (double v : samples) var += (v - mean) * (v - mean);
      var /= static_cast<double>(samples.size());
      overlay = var > 0.0 ? std::sqrt(var) : 0.0;
    }
    emit_histogram_svg(samples, overlay, rep_svg);
    std::printf("wrote %s (%zu samples, overlay sigma %.6g)\n", rep_svg.c_str(),
                samples.size(), overlay);
  });

  try {
    std::vector<std::string> args = with_config_expanded(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    // app.exit prints help for --help (returns 0) or the error message
    // otherwise; usage problems map to exit code 2
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
