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

#include "fowt/plant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fowt/errors.hpp"

namespace fowt {

void PlatformParams::validate() const {
  if (!(inertia > 0 && restoring > 0 && hub_height > 0 && damping >= 0)) {
    throw ConfigError(
        "platform requires positive inertia, restoring and hub height and "
        "non-negative damping");
  }
}

double PlatformParams::natural_frequency() const {
  return std::sqrt(restoring / inertia);
}

double PlatformParams::damping_ratio() const {
  return damping / (2.0 * std::sqrt(restoring * inertia));
}

void ActuatorParams::validate() const {
  if (!(pitch_lag > 0 && platform_lag > 0 && ballast_lag > 0 &&
        platform_moment_max >= 0 && ballast_moment_max >= 0)) {
    throw ConfigError("actuator lags must be positive and limits non-negative");
  }
}

FowtState::Vector FowtState::to_vector() const {
  Vector x;
  x << theta, omega_g, phi, phi_dot, beta_act, tau_p_act, ballast_act;
  return x;
}

FowtState FowtState::from_vector(const Vector& x) {
  return {x[0], x[1], x[2], x[3], x[4], x[5], x[6]};
}

double relative_wind(double wind, double phi_dot, double hub_height) {
  return std::max(wind - hub_height * phi_dot, kRelativeWindFloor);
}

double effective_pitch(const FowtState& state, const PlantInputs& inputs,
                       const ActuatorParams& actuators) {
  return actuators.lags_enabled ? state.beta_act : inputs.beta_cmd;
}

namespace {

double platform_moment(const FowtState& state, const PlantInputs& inputs,
                       const ActuatorParams& actuators) {
  if (!actuators.lags_enabled) {
    return inputs.tau_p_cmd + inputs.ballast_moment;
  }
  return state.tau_p_act + state.ballast_act;
}

}  // namespace

FowtState derivatives(const FowtState& state, const PlantInputs& inputs,
                      const Plant& plant) {
  if (!state.to_vector().allFinite()) {
    throw DivergenceError("non-finite plant state", 0.0);
  }
  if (std::abs(state.phi) >= std::numbers::pi / 2) {
    throw DivergenceError(
        fmt::format("platform pitch {:.3f} rad left the small-angle regime",
                    state.phi),
        0.0);
  }
  if (!(state.omega_g > 0.0)) {
    throw DivergenceError(
        fmt::format("generator speed {:.3g} rad/s not positive", state.omega_g),
        0.0);
  }

  const RotorGeometry& g = plant.geom;
  const PlatformParams& p = plant.platform;
  const ActuatorParams& act = plant.actuators;

  const double vr = relative_wind(inputs.wind, state.phi_dot, p.hub_height);
  const double beta = effective_pitch(state, inputs, act);
  const double tau_a = aero_torque(g, plant.surface, state.omega_g, vr, beta);
  const double thrust = aero_thrust(g, plant.surface, state.omega_g, vr, beta);

  FowtState rate;
  rate.theta = state.omega_g;
  rate.omega_g = g.gearbox_ratio / g.rotor_inertia *
                 (tau_a - g.gearbox_ratio * inputs.tau_g);
  rate.phi = state.phi_dot;
  const double moment = p.hub_height * thrust +
                        platform_moment(state, inputs, act) +
                        inputs.disturbance_moment;
  rate.phi_dot = (moment - p.damping * state.phi_dot -
                  p.restoring * state.phi) / p.inertia;

  if (act.lags_enabled) {
    const double beta_target =
        std::clamp(inputs.beta_cmd, g.beta_min, g.beta_max);
    rate.beta_act = std::clamp((beta_target - state.beta_act) / act.pitch_lag,
                               -g.beta_rate_max, g.beta_rate_max);
    const double tau_p_target =
        std::clamp(inputs.tau_p_cmd, -act.platform_moment_max,
                   act.platform_moment_max);
    rate.tau_p_act = (tau_p_target - state.tau_p_act) / act.platform_lag;
    const double ballast_target =
        std::clamp(inputs.ballast_moment, -act.ballast_moment_max,
                   act.ballast_moment_max);
    rate.ballast_act = (ballast_target - state.ballast_act) / act.ballast_lag;
  }
  return rate;
}

double tower_moment_proxy(const FowtState& state, const PlantInputs& inputs,
                          const Plant& plant, double restoring_share) {
  const PlatformParams& p = plant.platform;
  const double vr = relative_wind(inputs.wind, state.phi_dot, p.hub_height);
  const double beta = effective_pitch(state, inputs, plant.actuators);
  const double thrust =
      aero_thrust(plant.geom, plant.surface, state.omega_g, vr, beta);
  return p.hub_height * thrust + restoring_share * p.restoring * state.phi;
}

}  // namespace fowt
