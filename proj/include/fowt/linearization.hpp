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


#ifndef FOWT_LINEARIZATION_HPP_
#define FOWT_LINEARIZATION_HPP_

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "fowt/plant.hpp"
#include "fowt/rotor_aero.hpp"

namespace fowt {

// Indices into the linear state x = [θ, ωg, φ, φ̇] and input
// u = [v, β, τg, τp].
enum State : int { kTheta = 0, kGenSpeed = 1, kPitch = 2, kPitchRate = 3 };
enum Input : int { kWind = 0, kBladePitch = 1, kGenTorque = 2, kPlatformMoment = 3 };

struct OperatingPoint {
  double v_bar = 0.0;      // m/s
  double beta_bar = 0.0;   // rad
  double omega_bar = 0.0;  // rad/s
  double tau_g_bar = 0.0;  // N m
  double phi_bar = 0.0;    // rad
  AeroPartials partials;
};

struct LinearModel {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  OperatingPoint op;
  bool nmpz = false;
};

// Rated-speed, rated-torque trim at mean wind v_bar. The pitch residual is
// bracketed on the surface pitch nodes and refined by bisection and secant
// steps to 1e-10 relative.
OperatingPoint find_operating_point(const RotorGeometry& geom,
                                    const PerformanceSurface& surface,
                                    const PlatformParams& platform, double v_bar);

std::vector<OperatingPoint> find_operating_points(
    const RotorGeometry& geom, const PerformanceSurface& surface,
    const PlatformParams& platform, const std::vector<double>& speeds);

// Tuning grid: rated + 0.1 to cut-out in `spacing` steps, cut-out included.
std::vector<double> tuning_speeds(const RotorGeometry& geom, double spacing = 0.5);

// Whole-numbered speeds 12..24 m/s used for simulation studies.
std::vector<double> reference_speeds();

LinearModel build_state_space(const OperatingPoint& op, const RotorGeometry& geom,
                              const PlatformParams& platform);

// Left-hand side of the minimum-phase test with torque compensation
// fraction m: ht²(∂Fa/∂v − (1 − m)·∂τa/∂v·∂Fa/∂β/∂τa/∂β). The β→ωg channel
// has a right-half-plane zero when it is below −Dt.
double nmpz_coupling(const OperatingPoint& op, const PlatformParams& platform,
                     double m_tau_g = 0.0);

bool nmpz_predicate(const OperatingPoint& op, const PlatformParams& platform);
bool nmpz_compensated(const OperatingPoint& op, const PlatformParams& platform,
                      double m_tau_g);

// Closes the parallel compensation loops βc = −kc,β·φ̇ and τg,c = −kc,τg·φ̇
// into A.
LinearModel with_compensation(const LinearModel& model, double kc_beta,
                              double kc_tau_g);

// Finite zeros of the SISO channel input → output (indices above).
std::vector<std::complex<double>> transmission_zeros(const LinearModel& model,
                                                     int input, int output);

inline constexpr double kRightHalfPlaneTol = 1e-9;

bool has_rhp_zero(const std::vector<std::complex<double>>& zeros,
                  double tol = kRightHalfPlaneTol);

}  // namespace fowt

#endif  // FOWT_LINEARIZATION_HPP_
