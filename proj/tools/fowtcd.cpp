// Copyright 2026 The fowtcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: tune, linearize, simulate, batch, compare.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fowt/config.hpp"
#include "fowt/csv.hpp"
#include "fowt/errors.hpp"
#include "fowt/linearization.hpp"
#include "fowt/study.hpp"
#include "fowt/tuning.hpp"

namespace {

constexpr int kExitDiverged = 1;
constexpr int kExitError = 2;

struct Options {
  std::string config;
  std::string out = "out";
  std::optional<int> seeds;
  std::optional<std::uint64_t> master_seed;
  std::vector<std::string> variants;
  std::vector<double> speeds;
  std::optional<int> workers;
  std::string variant_a;
  std::string variant_b;
};

fowt::ToolkitConfig load(const Options& o) {
  std::string path = o.config;
  if (path.empty()) {
    if (const char* env = std::getenv(fowt::kConfigEnvVar)) path = env;
  }
  fowt::ToolkitConfig cfg = path.empty() ? fowt::ToolkitConfig{} : fowt::load_config(path);
  if (!o.speeds.empty()) cfg.study.speeds = o.speeds;
  if (o.seeds) cfg.study.seeds = *o.seeds;
  if (o.master_seed) cfg.study.master_seed = *o.master_seed;
  if (!o.variants.empty()) cfg.study.variants = o.variants;
  if (o.workers) cfg.study.workers = *o.workers;
  cfg.validate();
  return cfg;
}

std::string out_path(const Options& o, const std::string& file) {
  std::filesystem::create_directories(o.out);
  return (std::filesystem::path(o.out) / file).string();
}

std::vector<fowt::Variant> chosen_variants(const fowt::ToolkitConfig& cfg) {
  if (cfg.study.variants.empty()) return fowt::all_variants();
  std::vector<fowt::Variant> v;
  for (const auto& name : cfg.study.variants) v.push_back(fowt::parse_variant(name));
  return v;
}

int cmd_tune(const Options& o) {
  const fowt::Toolkit kit(load(o));
  {
    fowt::CsvWriter out(out_path(o, "gain_schedule.csv"),
                        {"variant", "v_bar", "beta_bar", "omega_pi", "zeta_pi", "kp",
                         "ki", "kc_beta", "kc_tau_g", "m_beta", "m_tau_g"});
    for (fowt::Variant v : chosen_variants(kit.cfg)) {
      const fowt::GainSchedule s = kit.schedule(v);
      for (std::size_t i = 0; i < s.size(); ++i) {
        out.row({fowt::variant_name(v), fowt::format_number(s.v_bar[i]),
                 fowt::format_number(s.index[i]), fowt::format_number(s.omega_pi[i]),
                 fowt::format_number(s.zeta_pi[i]), fowt::format_number(s.kp[i]),
                 fowt::format_number(s.ki[i]), fowt::format_number(s.kc_beta[i]),
                 fowt::format_number(s.kc_tau_g[i]), fowt::format_number(s.m_beta[i]),
                 fowt::format_number(s.m_tau_g[i])});
      }
    }
    out.close();
  }
  {
    const fowt::PlatformGains& g = kit.platform_gains;
    fowt::CsvWriter out(out_path(o, "platform_gains.csv"),
                        {"bandwidth", "pid_kp", "pid_ki", "pid_kd", "ballast_ki",
                         "ballast_filter_cutoff"});
    out.row({kit.cfg.tuning.platform_bandwidth, g.pid_kp, g.pid_ki, g.pid_kd,
             g.ballast_ki, g.ballast_filter_cutoff});
    out.close();
  }
  std::cout << fmt::format("tuned {} operating points; wrote {}\n",
                           kit.tuning_ops.size(), o.out);
  return 0;
}

int cmd_linearize(const Options& o) {
  const fowt::ToolkitConfig cfg = load(o);
  const fowt::PerformanceSurface surface = cfg.surface();
  const std::vector<double> speeds =
      o.speeds.empty() ? fowt::tuning_speeds(cfg.geom, cfg.tuning.grid_spacing) : o.speeds;
  std::vector<std::string> header = {"v_bar", "beta_bar", "phi_bar",
                                     "dtau_domega", "dtau_dv", "dtau_dbeta",
                                     "dthrust_domega", "dthrust_dv", "dthrust_dbeta"};
  for (const char m : {'a', 'b'}) {
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) header.push_back(fmt::format("{}{}{}", m, i, j));
    }
  }
  header.push_back("nmpz_coupling");
  header.push_back("nmpz");
  fowt::CsvWriter out(out_path(o, "linearization.csv"), header);
  int nmpz = 0;
  for (double v : speeds) {
    const auto op = fowt::find_operating_point(cfg.geom, surface, cfg.platform, v);
    const auto model = fowt::build_state_space(op, cfg.geom, cfg.platform);
    const auto& p = op.partials;
    std::vector<std::string> row;
    for (double x : {op.v_bar, op.beta_bar, op.phi_bar, p.dtau_domega, p.dtau_dv,
                     p.dtau_dbeta, p.dthrust_domega, p.dthrust_dv, p.dthrust_dbeta}) {
      row.push_back(fowt::format_number(x));
    }
    for (const auto* m : {&model.a, &model.b}) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) row.push_back(fowt::format_number((*m)(i, j)));
      }
    }
    row.push_back(fowt::format_number(fowt::nmpz_coupling(op, cfg.platform)));
    row.push_back(model.nmpz ? "1" : "0");
    out.row(row);
    nmpz += model.nmpz ? 1 : 0;
  }
  out.close();
  // The surface used for the trims, reloadable through surface.file.
  fowt::save_surface(out_path(o, "surface.txt"), surface);
  std::cout << fmt::format("{} operating points, {} non-minimum phase; wrote {}\n",
                           speeds.size(), nmpz, o.out);
  return 0;
}

void print_report(const fowt::StudyReport& r, const std::string& out) {
  std::cout << fmt::format("{} runs, {} diverged, tower-moment reference {:.6g} N m\n",
                           r.runs.size(), r.diverged, r.myt_reference);
  std::cout << "wrote " << out << '\n';
}

int cmd_simulate(const Options& o) {
  fowt::ToolkitConfig cfg = load(o);
  cfg.study.speeds.resize(1);
  if (!o.seeds) cfg.study.seeds = 1;
  const std::string variant = cfg.study.variants.empty() ? "Baseline" : cfg.study.variants.front();
  cfg.study.variants = {variant};
  const fowt::Toolkit kit(cfg);
  const fowt::StudyReport report = fowt::run_study(kit, o.out);
  for (const auto& run : report.runs) {
    std::vector<fowt::SeriesRow> series;
    fowt::run_single(kit, run.spec, &series);
    const std::string name =
        fmt::format("timeseries_{}_{}_{}.csv", fowt::variant_name(run.spec.variant),
                    fowt::format_number(run.spec.speed), run.spec.seed_index);
    fowt::write_series_csv(out_path(o, name), series);
  }
  print_report(report, o.out);
  return report.diverged > 0 ? kExitDiverged : 0;
}

int cmd_batch(const Options& o) {
  const fowt::Toolkit kit(load(o));
  const fowt::StudyReport report = fowt::run_study(kit, o.out);
  print_report(report, o.out);
  if (report.diverged > 0) {
    std::cerr << fmt::format("{} runs diverged, see {}/failures.csv\n", report.diverged,
                             o.out);
    return kExitDiverged;
  }
  return 0;
}

int cmd_compare(const Options& o) {
  const fowt::Comparison c = fowt::compare(o.variant_a, o.variant_b, o.out);
  const std::string a = fowt::variant_name(fowt::parse_variant(o.variant_a));
  const std::string b = fowt::variant_name(fowt::parse_variant(o.variant_b));
  fowt::write_comparison_csv(out_path(o, fmt::format("compare_{}_{}.csv", a, b)), o.variant_a,
                             o.variant_b, c);
  std::cout << fmt::format("{:>6} {:<20} {:>14} {:>14} {:>10}\n", "speed", "metric", a, b,
                           "percent");
  for (const auto& d : c.rows) {
    std::cout << fmt::format("{:>6g} {:<20} {:>14.6g} {:>14.6g} {:>9.2f}%\n", d.speed,
                             d.metric, d.a, d.b, d.percent);
  }
  std::cout << fmt::format("overspeed runs: {} {}, {} {}\n", a, c.overspeed_a, b,
                           c.overspeed_b);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Control co-design toolkit for a floating offshore wind turbine"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config,
                    fmt::format("YAML config (default: ${})", fowt::kConfigEnvVar));
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  };
  const auto matrix = [&](CLI::App* sub) {
    sub->add_option("--seeds", o.seeds, "Turbulence seeds per wind speed")
        ->check(CLI::PositiveNumber);
    sub->add_option("--master-seed", o.master_seed, "Master seed for the seed list");
    sub->add_option("--variants", o.variants, "Controller variants")->delimiter(',');
    sub->add_option("--speeds", o.speeds, "Mean wind speeds, m/s")->delimiter(',');
    sub->add_option("--workers", o.workers, "Worker threads (0: all cores)")
        ->check(CLI::NonNegativeNumber);
  };

  auto* tune = app.add_subcommand("tune", "Write gain schedules and platform gains");
  common(tune);
  tune->add_option("--variants", o.variants, "Controller variants")->delimiter(',');

  auto* lin = app.add_subcommand("linearize", "Write trim points and state-space models");
  common(lin);
  lin->add_option("--speeds", o.speeds, "Mean wind speeds, m/s")->delimiter(',');

  auto* sim = app.add_subcommand("simulate", "Run one variant at one wind speed");
  common(sim);
  matrix(sim);

  auto* batch = app.add_subcommand("batch", "Run the full study matrix");
  common(batch);
  matrix(batch);

  auto* cmp = app.add_subcommand("compare", "Compare two variants of a finished study");
  common(cmp);
  cmp->add_option("variant_a", o.variant_a, "Reference variant")->required();
  cmp->add_option("variant_b", o.variant_b, "Compared variant")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (tune->parsed()) return cmd_tune(o);
    if (lin->parsed()) return cmd_linearize(o);
    if (sim->parsed()) return cmd_simulate(o);
    if (batch->parsed()) return cmd_batch(o);
    if (cmp->parsed()) return cmd_compare(o);
  } catch (const std::exception& e) {
    std::cerr << "fowtcd: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
