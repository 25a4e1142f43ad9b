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


#ifndef FOWT_CONTROLLER_HPP_
#define FOWT_CONTROLLER_HPP_

#include "fowt/filters.hpp"
#include "fowt/rotor_aero.hpp"
#include "fowt/tuning.hpp"

namespace fowt {

struct FilterCorners {
  double speed_lpf_ratio = 4.0;  // generator-speed corner as a multiple of ωpi
  double pitch_rate_lpf = 2.0;   // rad/s
  double pitch_rate_hpf = 0.01;  // rad/s
  double schedule_lpf = 0.1;     // rad/s, pitch signal used for gain lookup
};

struct ControllerConfig {
  GainSchedule schedule;
  PlatformGains platform_gains;
  CompensationMode compensation = CompensationMode::none;
  bool use_ballast = false;
  bool use_platform_pid = false;
  FilterCorners filters;

  double rated_gen_speed = 0.0;  // rad/s
  double rated_gen_torque = 0.0;  // N m
  double tau_g_max = 0.0;         // N m
  double beta_min = 0.0;          // rad
  double beta_max = 0.0;          // rad
  double beta_rate_max = 0.0;     // rad/s
  double tau_p_max = 0.0;         // N m
  double ballast_max = 0.0;       // N m
  double kw2_gain = 0.0;          // N m s²/rad², below-rated torque law
  double region_hysteresis = 0.02;
  double dt = 0.02;               // s

  void validate() const;
};

// Limits and rated values from the turbine and actuators.
ControllerConfig make_controller_config(const RotorGeometry& geom,
                                        const ActuatorParams& actuators,
                                        GainSchedule schedule,
                                        double tau_g_max_ratio = 1.2);

// Region-2 gain ½ρπR⁵·Cp,max/(λ*³·Ng³) from the peak of the surface.
double optimal_kw2_gain(const RotorGeometry& geom,
                        const PerformanceSurface& surface);

struct Measurement {
  double gen_speed = 0.0;   // rad/s
  double pitch_rate = 0.0;  // tower-top pitch rate, rad/s
  double pitch = 0.0;       // platform pitch, rad
};

struct Commands {
  double beta = 0.0;     // rad
  double tau_g = 0.0;    // N m
  double tau_p = 0.0;    // N m
  double ballast = 0.0;  // N m
  bool fault = false;
};

struct ControllerState {
  double speed_error_integral = 0.0;  // rad, accumulated speed error
  double platform_integral = 0.0;  // N m, PID integral contribution
  double ballast = 0.0;            // N m, ballast integrator
  SecondOrderLowPass speed_filter;
  SecondOrderLowPass rate_low;
  FirstOrderHighPass rate_high;
  FirstOrderLowPass heel_mean;
  FirstOrderLowPass schedule_pitch;
  bool above_rated = true;
  Commands last;
};

// Conditional integration: the increment is dropped when the command is
// limited and the increment pushes further into the limit.
double anti_windup(double integrator, double increment, double command,
                   double limited_command);

class Controller {
 public:
  explicit Controller(ControllerConfig cfg);

  // Steady start: filters settled on `meas`, speed integral holding
  // `beta`, ballast integrator at `ballast`.
  void initialize(const Measurement& meas, double beta, double ballast);

  Commands step(const Measurement& meas);

  const ControllerState& state() const { return state_; }
  const ControllerConfig& config() const { return cfg_; }
  double filtered_speed() const { return state_.speed_filter.output(); }
  double filtered_pitch_rate() const { return state_.rate_high.output(); }

 private:
  ControllerConfig cfg_;
  ControllerState state_;
};

// τg,c = −kc,τg·φ̇, positive for a forward-swinging rotor.
inline double torque_compensation(double kc_tau_g, double pitch_rate) {
  return -kc_tau_g * pitch_rate;
}

// βc = −kc,β·φ̇.
inline double pitch_compensation(double kc_beta, double pitch_rate) {
  return -kc_beta * pitch_rate;
}

}  // namespace fowt

#endif  // FOWT_CONTROLLER_HPP_
