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


#ifndef FOWT_CONFIG_HPP_
#define FOWT_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fowt/controller.hpp"
#include "fowt/plant.hpp"
#include "fowt/rotor_aero.hpp"
#include "fowt/simulation.hpp"
#include "fowt/tuning.hpp"
#include "fowt/wind.hpp"

namespace fowt {

struct TuningConfig {
  DetuneTargets targets;
  double grid_spacing = 0.5;             // m/s
  double m_beta = 0.5;                   // standalone pitch compensation
  double phi_dot_max = 0.0175;           // rad/s
  double tau_g_max_ratio = 1.2;
  double platform_bandwidth = 1.0;       // rad/s
  double ballast_settle_time = 600.0;    // s
};

struct StudyConfig {
  std::vector<double> speeds = {12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24};
  int seeds = 6;
  std::uint64_t master_seed = 20260101;
  std::vector<std::string> variants;  // empty: all
  int workers = 0;                    // 0: hardware concurrency
  std::optional<double> myt_reference;

  void validate() const;
};

struct ToolkitConfig {
  RotorGeometry geom;
  SurrogateParams surrogate;
  std::string surface_file;  // empty: tabulate the surrogate
  PlatformParams platform;
  ActuatorParams actuators;
  TuningConfig tuning;
  FilterCorners filters;
  double controller_dt = 0.02;
  double region_hysteresis = 0.02;
  double i_ref = 0.14;
  double wind_dt = 0.05;
  double length_scale = 340.2;
  SimConfig sim;
  StudyConfig study;

  void validate() const;
  PerformanceSurface surface() const;
};

inline constexpr const char* kConfigEnvVar = "FOWTCD_CONFIG";

// YAML file with optional sections turbine, surface, platform, actuators,
// tuning, controller, wind, simulation, study. Unknown keys are errors.
ToolkitConfig load_config(const std::string& path);
ToolkitConfig parse_config(const std::string& yaml_text);

}  // namespace fowt

#endif  // FOWT_CONFIG_HPP_
