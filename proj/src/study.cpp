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

#include "fowt/study.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "fowt/csv.hpp"
#include "fowt/errors.hpp"
#include "fowt/linearization.hpp"

namespace fowt {

const std::vector<Variant>& all_variants() {
  static const std::vector<Variant> v = {
      Variant::baseline,  Variant::detune,     Variant::detune_sched,
      Variant::comp_beta, Variant::comp_tau_g, Variant::comp_dual,
      Variant::detune_comp, Variant::detune_comp_ptfm};
  return v;
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::baseline: return "Baseline";
    case Variant::detune: return "Detune";
    case Variant::detune_sched: return "Detune-Sched";
    case Variant::comp_beta: return "Comp-Beta";
    case Variant::comp_tau_g: return "Comp-TauG";
    case Variant::comp_dual: return "Comp-Dual";
    case Variant::detune_comp: return "Detune+Comp";
    case Variant::detune_comp_ptfm: return "Detune+Comp+Ptfm";
  }
  return "?";
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

Variant parse_variant(const std::string& name) {
  const std::string key = lower(name);
  for (Variant v : all_variants()) {
    if (lower(variant_name(v)) == key) return v;
  }
  std::string known;
  for (Variant v : all_variants()) known += (known.empty() ? "" : ", ") + variant_name(v);
  throw ConfigError(fmt::format("unknown controller variant '{}' (known: {})", name, known));
}

VariantSpec variant_spec(Variant v) {
  switch (v) {
    case Variant::baseline: return {};
    case Variant::detune: return {DetuneKind::detuned, CompensationMode::none, false};
    case Variant::detune_sched:
      return {DetuneKind::scheduled, CompensationMode::none, false};
    case Variant::comp_beta:
      return {DetuneKind::baseline, CompensationMode::beta, false};
    case Variant::comp_tau_g:
      return {DetuneKind::baseline, CompensationMode::torque, false};
    case Variant::comp_dual:
      return {DetuneKind::baseline, CompensationMode::dual, false};
    case Variant::detune_comp:
      return {DetuneKind::scheduled, CompensationMode::dual, false};
    case Variant::detune_comp_ptfm:
      return {DetuneKind::scheduled, CompensationMode::dual, true};
  }
  return {};
}

namespace {

Plant make_plant(const ToolkitConfig& cfg) {
  return Plant{cfg.geom, cfg.surface(), cfg.platform, cfg.actuators};
}

}  // namespace

Toolkit::Toolkit(ToolkitConfig config)
    : cfg(std::move(config)), plant(make_plant(cfg)) {
  cfg.validate();
  tuning_ops = find_operating_points(plant.geom, plant.surface, plant.platform,
                                     tuning_speeds(plant.geom, cfg.tuning.grid_spacing));
  platform_gains = tune_platform_pid(plant.platform, cfg.tuning.platform_bandwidth);
  const BallastGains b = tune_ballast(plant.platform, cfg.tuning.ballast_settle_time);
  platform_gains.ballast_ki = b.ki;
  platform_gains.ballast_filter_cutoff = b.filter_cutoff;
}

GainSchedule Toolkit::schedule(Variant v) const {
  const VariantSpec spec = variant_spec(v);
  CompensationOptions comp;
  comp.mode = spec.compensation;
  comp.m_beta = cfg.tuning.m_beta;
  comp.phi_dot_max = cfg.tuning.phi_dot_max;
  comp.tau_g_max_ratio = cfg.tuning.tau_g_max_ratio;
  return build_gain_schedule(tuning_ops, plant.geom, plant.platform, spec.detune,
                             comp, cfg.tuning.targets);
}

ControllerConfig Toolkit::controller_config(Variant v) const {
  const VariantSpec spec = variant_spec(v);
  ControllerConfig c = make_controller_config(plant.geom, plant.actuators,
                                              schedule(v), cfg.tuning.tau_g_max_ratio);
  c.platform_gains = platform_gains;
  c.compensation = spec.compensation;
  c.use_platform_pid = spec.platform_control;
  c.use_ballast = spec.platform_control;
  c.filters = cfg.filters;
  c.dt = cfg.controller_dt;
  c.region_hysteresis = cfg.region_hysteresis;
  c.kw2_gain = optimal_kw2_gain(plant.geom, plant.surface);
  return c;
}

std::vector<std::uint64_t> study_seeds(std::uint64_t master, int count) {
  std::vector<std::uint64_t> s;
  for (int i = 0; i < count; ++i) s.push_back(derive_seed(master, static_cast<std::uint64_t>(i)));
  return s;
}

std::uint64_t wind_seed(std::uint64_t study_seed, double speed) {
  return derive_seed(study_seed, static_cast<std::uint64_t>(std::llround(speed * 1000.0)));
}

RunOutcome run_single(const Toolkit& kit, const RunSpec& spec,
                      std::vector<SeriesRow>* series) {
  const ToolkitConfig& cfg = kit.cfg;
  WindConfig w;
  w.mean_speed = spec.speed;
  w.i_ref = cfg.i_ref;
  w.seed = wind_seed(spec.seed, spec.speed);
  w.dt = cfg.wind_dt;
  w.duration = cfg.sim.duration;
  w.length_scale = cfg.length_scale;
  const WindSeries wind = synthesize(w);

  const OperatingPoint op = find_operating_point(kit.plant.geom, kit.plant.surface,
                                                 kit.plant.platform, spec.speed);
  const bool platform = variant_spec(spec.variant).platform_control;
  const InitialCondition ic = trim_initial_condition(
      kit.plant, op, platform ? cfg.sim.ballast_mode : BallastMode::closed_loop);

  Controller controller(kit.controller_config(spec.variant));
  SimResult r = integrate(kit.plant, &controller, wind, cfg.sim, ic);

  RunOutcome out;
  out.spec = spec;
  out.diverged = r.diverged;
  out.divergence_time = r.divergence_time;
  out.message = r.message;
  if (!r.diverged) out.summary = summarize(r.series, cfg.sim.discard);
  if (series) *series = std::move(r.series);
  return out;
}

std::vector<RunOutcome> run_all(const Toolkit& kit, const std::vector<RunSpec>& specs,
                                int workers) {
  std::vector<RunOutcome> out(specs.size());
  int n = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  n = std::clamp(n, 1, std::max<int>(1, static_cast<int>(specs.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      try {
        out[i] = run_single(kit, specs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(specs.size());
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kReferenceSpeed = 12.0;

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "gen_speed_std", "gen_speed_max", "myt_std",
      "myt_max",       "mean_power",    "max_platform_pitch"};
  return names;
}

std::vector<double> metric_values(const RunMetrics& m) {
  return {m.gen_speed_std, m.gen_speed_max, m.myt_std,
          m.myt_max,       m.mean_power,    m.max_platform_pitch};
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

bool same_speed(double a, double b) { return std::abs(a - b) < 1e-9; }

struct Aggregate {
  int runs = 0;
  int diverged = 0;
  int overspeed = 0;
  std::vector<double> mean, std, max;
};

Aggregate aggregate(const std::vector<const RunMetrics*>& ok, int diverged) {
  const std::size_t k = metric_names().size();
  Aggregate a;
  a.runs = static_cast<int>(ok.size()) + diverged;
  a.diverged = diverged;
  a.mean.assign(k, kNaN);
  a.std.assign(k, kNaN);
  a.max.assign(k, kNaN);
  if (ok.empty()) return a;
  const double n = static_cast<double>(ok.size());
  for (std::size_t j = 0; j < k; ++j) {
    double sum = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (const RunMetrics* m : ok) {
      const double v = metric_values(*m)[j];
      sum += v;
      best = std::max(best, v);
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const RunMetrics* m : ok) {
      const double d = metric_values(*m)[j] - mean;
      ss += d * d;
    }
    a.mean[j] = mean;
    a.std[j] = std::sqrt(ss / n);
    a.max[j] = best;
  }
  for (const RunMetrics* m : ok) a.overspeed += m->overspeed ? 1 : 0;
  return a;
}

}  // namespace

StudyReport run_study(const Toolkit& kit, const std::string& out_dir) {
  const ToolkitConfig& cfg = kit.cfg;
  const StudyConfig& st = cfg.study;
  st.validate();
  std::filesystem::create_directories(out_dir);

  std::vector<Variant> variants;
  if (st.variants.empty()) {
    variants = all_variants();
  } else {
    for (const auto& name : st.variants) {
      const Variant v = parse_variant(name);
      if (std::find(variants.begin(), variants.end(), v) == variants.end()) {
        variants.push_back(v);
      }
    }
  }
  const auto seeds = study_seeds(st.master_seed, st.seeds);

  std::vector<RunSpec> specs;
  for (Variant v : variants) {
    for (double speed : st.speeds) {
      for (int i = 0; i < st.seeds; ++i) specs.push_back({v, speed, i, seeds[i]});
    }
  }
  const std::size_t study_runs = specs.size();

  // Baseline at 12 m/s sets the tower-moment normalization.
  const bool has_reference_runs =
      std::find(variants.begin(), variants.end(), Variant::baseline) != variants.end() &&
      std::any_of(st.speeds.begin(), st.speeds.end(),
                  [](double s) { return same_speed(s, kReferenceSpeed); });
  if (!st.myt_reference && !has_reference_runs) {
    for (int i = 0; i < st.seeds; ++i) {
      specs.push_back({Variant::baseline, kReferenceSpeed, i, seeds[i]});
    }
  }

  std::vector<RunOutcome> all = run_all(kit, specs, st.workers);

  StudyReport report;
  if (st.myt_reference) {
    report.myt_reference = *st.myt_reference;
    report.reference_source = "config";
  } else {
    double sum = 0.0;
    int count = 0;
    for (const RunOutcome& r : all) {
      if (r.spec.variant == Variant::baseline &&
          same_speed(r.spec.speed, kReferenceSpeed) && !r.diverged) {
        sum += r.summary.myt_mean;
        ++count;
      }
    }
    if (count == 0) {
      throw ConfigError("every Baseline run at 12 m/s diverged; no tower-moment reference");
    }
    report.myt_reference = sum / count;
    report.reference_source = fmt::format("Baseline 12 m/s mean over {} seeds", count);
  }
  all.resize(study_runs);
  report.runs = std::move(all);

  for (const RunOutcome& r : report.runs) {
    if (r.diverged) {
      ++report.diverged;
      RunMetrics m;
      m.gen_speed_std = m.gen_speed_max = m.myt_std = m.myt_max = kNaN;
      m.mean_power = m.max_platform_pitch = kNaN;
      report.metrics.push_back(m);
    } else {
      report.metrics.push_back(normalize(r.summary, cfg.geom.rated_gen_speed,
                                         report.myt_reference,
                                         cfg.sim.overspeed_ratio));
    }
  }

  namespace fs = std::filesystem;
  const fs::path dir(out_dir);

  {
    std::vector<std::string> header = {"variant", "speed", "seed_index", "seed", "status"};
    for (const auto& m : metric_names()) header.push_back(m);
    header.push_back("overspeed");
    CsvWriter out((dir / "metrics.csv").string(), header);
    for (std::size_t i = 0; i < report.runs.size(); ++i) {
      const RunOutcome& r = report.runs[i];
      std::vector<std::string> row = {variant_name(r.spec.variant),
                                      format_number(r.spec.speed),
                                      std::to_string(r.spec.seed_index),
                                      std::to_string(r.spec.seed),
                                      r.diverged ? "diverged" : "ok"};
      for (double v : metric_values(report.metrics[i])) row.push_back(format_number(v));
      row.push_back(r.diverged ? "" : (report.metrics[i].overspeed ? "1" : "0"));
      out.row(row);
    }
    out.close();
  }

  std::map<std::pair<int, double>, Aggregate> agg;
  {
    std::vector<std::string> header = {"variant", "speed", "runs", "diverged",
                                       "overspeed_count"};
    for (const auto& m : metric_names()) {
      header.push_back(m + "_mean");
      header.push_back(m + "_std");
      header.push_back(m + "_max");
    }
    CsvWriter out((dir / "aggregate.csv").string(), header);
    for (Variant v : variants) {
      for (double speed : st.speeds) {
        std::vector<const RunMetrics*> ok;
        int diverged = 0;
        for (std::size_t i = 0; i < report.runs.size(); ++i) {
          const RunOutcome& r = report.runs[i];
          if (r.spec.variant != v || !same_speed(r.spec.speed, speed)) continue;
          if (r.diverged) {
            ++diverged;
          } else {
            ok.push_back(&report.metrics[i]);
          }
        }
        const Aggregate a = aggregate(ok, diverged);
        agg[{static_cast<int>(v), speed}] = a;
        std::vector<std::string> row = {variant_name(v), format_number(speed),
                                        std::to_string(a.runs),
                                        std::to_string(a.diverged),
                                        std::to_string(a.overspeed)};
        for (std::size_t j = 0; j < a.mean.size(); ++j) {
          row.push_back(format_number(a.mean[j]));
          row.push_back(format_number(a.std[j]));
          row.push_back(format_number(a.max[j]));
        }
        out.row(row);
      }
    }
    out.close();
  }

  if (std::find(variants.begin(), variants.end(), Variant::baseline) != variants.end()) {
    CsvWriter out((dir / "comparison.csv").string(),
                  {"variant", "speed", "metric", "baseline", "value", "delta",
                   "percent"});
    for (Variant v : variants) {
      for (double speed : st.speeds) {
        const Aggregate& base = agg[{static_cast<int>(Variant::baseline), speed}];
        const Aggregate& cur = agg[{static_cast<int>(v), speed}];
        for (std::size_t j = 0; j < metric_names().size(); ++j) {
          const double a = base.mean[j];
          const double b = cur.mean[j];
          const double d = b - a;
          const double pct = a != 0.0 ? 100.0 * d / std::abs(a) : kNaN;
          out.row({variant_name(v), format_number(speed), metric_names()[j],
                   format_number(a), format_number(b), format_number(d),
                   format_number(pct)});
        }
        out.row({variant_name(v), format_number(speed), "overspeed_count",
                 std::to_string(base.overspeed), std::to_string(cur.overspeed),
                 std::to_string(cur.overspeed - base.overspeed), format_number(kNaN)});
      }
    }
    out.close();
  }

  {
    CsvWriter out((dir / "failures.csv").string(),
                  {"variant", "speed", "seed_index", "seed", "time", "message"});
    for (const RunOutcome& r : report.runs) {
      if (!r.diverged) continue;
      out.row({variant_name(r.spec.variant), format_number(r.spec.speed),
               std::to_string(r.spec.seed_index), std::to_string(r.spec.seed),
               format_number(r.divergence_time), sanitize(r.message)});
    }
    out.close();
  }

  {
    CsvWriter out((dir / "seeds.csv").string(), {"master_seed", "seed_index", "seed"});
    for (int i = 0; i < st.seeds; ++i) {
      out.row({std::to_string(st.master_seed), std::to_string(i),
               std::to_string(seeds[i])});
    }
    out.close();
  }

  {
    CsvWriter out((dir / "normalization.csv").string(),
                  {"myt_reference", "rated_gen_speed", "source"});
    out.row({format_number(report.myt_reference),
             format_number(cfg.geom.rated_gen_speed), report.reference_source});
    out.close();
  }
  return report;
}

Comparison compare(const std::string& variant_a, const std::string& variant_b,
                   const std::string& study_dir) {
  const CsvTable t =
      read_csv((std::filesystem::path(study_dir) / "aggregate.csv").string());
  const std::string name_a = variant_name(parse_variant(variant_a));
  const std::string name_b = variant_name(parse_variant(variant_b));
  const std::size_t c_var = t.column("variant");
  const std::size_t c_speed = t.column("speed");
  const std::size_t c_over = t.column("overspeed_count");

  const auto rows_of = [&](const std::string& name) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (t.text(r, c_var) == name) rows.push_back(r);
    }
    if (rows.empty()) {
      throw ConfigError(fmt::format("variant '{}' not present in {}", name, study_dir));
    }
    return rows;
  };
  const auto ra = rows_of(name_a);
  const auto rb = rows_of(name_b);
  if (ra.size() != rb.size()) throw ConfigError("variants cover different speed grids");

  Comparison c;
  for (std::size_t k = 0; k < ra.size(); ++k) {
    const double speed = t.number(ra[k], c_speed);
    if (!same_speed(speed, t.number(rb[k], c_speed))) {
      throw ConfigError("variants cover different speed grids");
    }
    c.overspeed_a += static_cast<int>(t.number(ra[k], c_over));
    c.overspeed_b += static_cast<int>(t.number(rb[k], c_over));
    for (const auto& m : metric_names()) {
      const std::size_t col = t.column(m + "_mean");
      const double a = t.number(ra[k], col);
      const double b = t.number(rb[k], col);
      const double d = b - a;
      c.rows.push_back({speed, m, a, b, d, a != 0.0 ? 100.0 * d / std::abs(a) : kNaN});
    }
  }
  return c;
}

void write_comparison_csv(const std::string& path, const std::string& variant_a,
                          const std::string& variant_b, const Comparison& c) {
  CsvWriter out(path, {"speed", "metric", variant_name(parse_variant(variant_a)),
                       variant_name(parse_variant(variant_b)), "delta", "percent"});
  for (const MetricDelta& d : c.rows) {
    out.row({format_number(d.speed), d.metric, format_number(d.a),
             format_number(d.b), format_number(d.delta), format_number(d.percent)});
  }
  out.row({"", "overspeed_count", std::to_string(c.overspeed_a),
           std::to_string(c.overspeed_b),
           std::to_string(c.overspeed_b - c.overspeed_a), ""});
  out.close();
}

}  // namespace fowt
