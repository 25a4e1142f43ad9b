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


#ifndef FOWT_STUDY_HPP_
#define FOWT_STUDY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fowt/config.hpp"
#include "fowt/simulation.hpp"
#include "fowt/tuning.hpp"

namespace fowt {

enum class Variant {
  baseline,
  detune,
  detune_sched,
  comp_beta,
  comp_tau_g,
  comp_dual,
  detune_comp,
  detune_comp_ptfm,
};

const std::vector<Variant>& all_variants();
std::string variant_name(Variant v);
// Accepts the canonical names, e.g. "Detune+Comp", case-insensitively.
Variant parse_variant(const std::string& name);

struct VariantSpec {
  DetuneKind detune = DetuneKind::baseline;
  CompensationMode compensation = CompensationMode::none;
  bool platform_control = false;  // PID and ballast
};

VariantSpec variant_spec(Variant v);

// Tuned artefacts shared by every run of a study.
struct Toolkit {
  ToolkitConfig cfg;
  Plant plant;
  std::vector<OperatingPoint> tuning_ops;
  PlatformGains platform_gains;

  explicit Toolkit(ToolkitConfig config);

  GainSchedule schedule(Variant v) const;
  ControllerConfig controller_config(Variant v) const;
};

struct RunSpec {
  Variant variant;
  double speed;
  int seed_index;
  std::uint64_t seed;
};

struct RunOutcome {
  RunSpec spec;
  SeriesSummary summary;
  bool diverged = false;
  double divergence_time = 0.0;
  std::string message;
};

// One closed-loop turbulent run. Keeps the series only when asked.
RunOutcome run_single(const Toolkit& kit, const RunSpec& spec,
                      std::vector<SeriesRow>* series = nullptr);

// Runs in parallel; results come back in input order.
std::vector<RunOutcome> run_all(const Toolkit& kit, const std::vector<RunSpec>& specs,
                                int workers);

std::vector<std::uint64_t> study_seeds(std::uint64_t master, int count);
// Wind seed for one (speed, seed) cell, shared by all variants.
std::uint64_t wind_seed(std::uint64_t study_seed, double speed);

struct StudyReport {
  std::vector<RunOutcome> runs;
  std::vector<RunMetrics> metrics;  // parallel to runs, NaN when diverged
  double myt_reference = 0.0;
  std::string reference_source;
  int diverged = 0;
};

// Executes the study matrix and writes metrics.csv, aggregate.csv,
// comparison.csv (when Baseline is present), failures.csv, seeds.csv and
// normalization.csv into out_dir.
StudyReport run_study(const Toolkit& kit, const std::string& out_dir);

struct MetricDelta {
  double speed;
  std::string metric;
  double a, b, delta, percent;
};

struct Comparison {
  std::vector<MetricDelta> rows;
  int overspeed_a = 0;
  int overspeed_b = 0;
};

// Per-speed deltas b − a of the seed-averaged metrics in a study directory.
Comparison compare(const std::string& variant_a, const std::string& variant_b,
                   const std::string& study_dir);

void write_comparison_csv(const std::string& path, const std::string& variant_a,
                          const std::string& variant_b, const Comparison& c);

}  // namespace fowt

#endif  // FOWT_STUDY_HPP_
