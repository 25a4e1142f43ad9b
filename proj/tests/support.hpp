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


#ifndef FOWT_TESTS_SUPPORT_HPP_
#define FOWT_TESTS_SUPPORT_HPP_

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fowt/linearization.hpp"
#include "fowt/plant.hpp"
#include "fowt/rotor_aero.hpp"

namespace fowt::testing {

// The surrogate tabulation is the slow part of most fixtures, so it is built
// once per process.
inline const PerformanceSurface& default_surface() {
  static const PerformanceSurface surface = build_surrogate_surface({});
  return surface;
}

inline PerformanceSurface constant_surface(double cp, double ct) {
  Eigen::VectorXd lambda = Eigen::VectorXd::LinSpaced(31, 1.0, 16.0);
  Eigen::VectorXd beta = Eigen::VectorXd::LinSpaced(21, -0.1, 0.9);
  return PerformanceSurface(lambda, beta,
                            Eigen::MatrixXd::Constant(31, 21, cp),
                            Eigen::MatrixXd::Constant(31, 21, ct));
}

inline Plant default_plant(PlatformParams platform = {}) {
  return Plant{RotorGeometry{}, default_surface(), platform, ActuatorParams{}};
}

inline const std::vector<OperatingPoint>& reference_ops() {
  static const std::vector<OperatingPoint> ops = find_operating_points(
      RotorGeometry{}, default_surface(), PlatformParams{}, reference_speeds());
  return ops;
}

struct Jacobian {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
};

// Central-difference Jacobian of the nonlinear plant with actuator lags off,
// over (θ, ωg, φ, φ̇) and (v, β, τg, τp). The pitch-rate step is the wind
// step divided by the hub height so both move the relative wind equally.
inline Jacobian numerical_jacobian(const Plant& plant_in, const OperatingPoint& op) {
  Plant plant = plant_in;
  plant.actuators.lags_enabled = false;
  const double ht = plant.platform.hub_height;
  const FiniteDifferenceSteps steps;
  const std::array<double, 4> dx = {1e-3, steps.gen_speed, 1e-6, steps.wind / ht};
  const std::array<double, 4> du = {steps.wind, steps.beta, 1.0, 1e3};

  const auto rate = [&](const Eigen::Vector4d& x, const Eigen::Vector4d& u) {
    FowtState s;
    s.theta = x[0];
    s.omega_g = x[1];
    s.phi = x[2];
    s.phi_dot = x[3];
    PlantInputs in;
    in.wind = u[0];
    in.beta_cmd = u[1];
    in.tau_g = u[2];
    in.tau_p_cmd = u[3];
    const FowtState r = derivatives(s, in, plant);
    return Eigen::Vector4d(r.theta, r.omega_g, r.phi, r.phi_dot);
  };
  const Eigen::Vector4d x0(0.0, op.omega_bar, op.phi_bar, 0.0);
  const Eigen::Vector4d u0(op.v_bar, op.beta_bar, op.tau_g_bar, 0.0);
  Jacobian j;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4d e = Eigen::Vector4d::Unit(k);
    j.a.col(k) = (rate(x0 + dx[k] * e, u0) - rate(x0 - dx[k] * e, u0)) / (2.0 * dx[k]);
    j.b.col(k) = (rate(x0, u0 + du[k] * e) - rate(x0, u0 - du[k] * e)) / (2.0 * du[k]);
  }
  return j;
}

// Entrywise relative agreement; entries that are zero in the reference must
// be zero (up to `zero_tol` absolute) in the candidate.
inline bool entrywise_close(const Eigen::Matrix4d& reference,
                            const Eigen::Matrix4d& candidate, double rel_tol,
                            double zero_tol, std::string* why = nullptr) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double a = reference(r, c);
      const double b = candidate(r, c);
      const bool ok = a == 0.0 ? std::abs(b) <= zero_tol
                               : std::abs(a - b) <= rel_tol * std::abs(a);
      if (!ok) {
        if (why) {
          *why = "entry (" + std::to_string(r) + "," + std::to_string(c) +
                 "): " + std::to_string(a) + " vs " + std::to_string(b);
        }
        return false;
      }
    }
  }
  return true;
}

inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace fowt::testing

#endif  // FOWT_TESTS_SUPPORT_HPP_
