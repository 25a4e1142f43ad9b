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


#ifndef FOWT_PLANT_HPP_
#define FOWT_PLANT_HPP_

#include <Eigen/Core>

#include "fowt/rotor_aero.hpp"

namespace fowt {

struct PlatformParams {
  double inertia = 2.0e10;    // Jt, kg m^2
  double damping = 2.0e9;     // Dt, N m s/rad
  double restoring = 5.0e9;   // kt, N m/rad
  double hub_height = 119.0;  // ht, m

  void validate() const;
  double natural_frequency() const;
  double damping_ratio() const;
};

struct ActuatorParams {
  double pitch_lag = 0.2;              // s
  double platform_lag = 0.25;          // s
  double platform_moment_max = 5.0e8;  // N m
  double ballast_lag = 120.0;          // s
  double ballast_moment_max = 4.0e8;   // N m
  // Off: actuators pass commands straight through. Used to compare the
  // nonlinear plant against the 4-state linear model.
  bool lags_enabled = true;

  void validate() const;
};

// Everything the plant derivative needs besides state and inputs.
struct Plant {
  RotorGeometry geom;
  PerformanceSurface surface;
  PlatformParams platform;
  ActuatorParams actuators;
};

struct FowtState {
  double theta = 0.0;      // generator-speed integral, rad
  double omega_g = 0.0;    // rad/s
  double phi = 0.0;        // platform pitch, rad
  double phi_dot = 0.0;    // rad/s
  double beta_act = 0.0;   // rad
  double tau_p_act = 0.0;  // N m
  double ballast_act = 0.0;  // N m

  static constexpr int kSize = 7;
  using Vector = Eigen::Matrix<double, kSize, 1>;

  Vector to_vector() const;
  static FowtState from_vector(const Vector& x);
};

struct PlantInputs {
  double wind = 0.0;               // m/s
  double beta_cmd = 0.0;           // rad
  double tau_g = 0.0;              // N m, high-speed shaft
  double tau_p_cmd = 0.0;          // N m
  double ballast_moment = 0.0;     // N m, commanded
  double disturbance_moment = 0.0;  // N m, external
};

inline constexpr double kRelativeWindFloor = 0.5;  // m/s

double relative_wind(double wind, double phi_dot, double hub_height);

// Time derivative of every state. Throws DivergenceError (time 0) when the
// platform leaves the small-angle regime or the state is not finite.
FowtState derivatives(const FowtState& state, const PlantInputs& inputs,
                      const Plant& plant);

// Blade pitch and platform moment seen by the aerodynamics and platform,
// i.e. actuator states or, with lags off, the commands themselves.
double effective_pitch(const FowtState& state, const PlantInputs& inputs,
                       const ActuatorParams& actuators);

// Tower-base fore-aft moment proxy: thrust moment plus a share of the
// platform restoring moment. Not a structural load.
double tower_moment_proxy(const FowtState& state, const PlantInputs& inputs,
                          const Plant& plant, double restoring_share = 0.5);

}  // namespace fowt

#endif  // FOWT_PLANT_HPP_
