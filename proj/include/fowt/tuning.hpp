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


#ifndef FOWT_TUNING_HPP_
#define FOWT_TUNING_HPP_

#include <string>
#include <vector>

#include "fowt/linearization.hpp"
#include "fowt/plant.hpp"
#include "fowt/rotor_aero.hpp"

namespace fowt {

struct TransientSpec {
  double omega_pi = 0.3;  // rad/s
  double zeta_pi = 0.7;

  void validate() const;
};

struct PiGains {
  double kp = 0.0;  // rad per rad/s
  double ki = 0.0;  // rad per rad
};

// Gains placing the rigid-platform speed loop at s² + 2ζω·s + ω² with
// pitch law β̃ = −(kp·ω̃g + ki·θ̃).
PiGains pi_gains(const OperatingPoint& op, const TransientSpec& spec,
                 const RotorGeometry& geom);

enum class DetuneKind { baseline, detuned, scheduled };

DetuneKind parse_detune_kind(const std::string& name);

// Per-operating-point transient targets. The scheduled kind interpolates in
// mean wind from the detuned pair at rated to the high-speed pair at
// cut-out.
struct DetuneTargets {
  TransientSpec baseline{0.3, 0.7};
  TransientSpec detuned{0.2, 1.0};
  TransientSpec high_speed{0.5, 0.7};
};

std::vector<TransientSpec> build_detune_schedule(
    DetuneKind kind, const std::vector<OperatingPoint>& ops,
    const RotorGeometry& geom, const DetuneTargets& targets = {});

TransientSpec scheduled_spec(double v_bar, const RotorGeometry& geom,
                             const DetuneTargets& targets = {});

// Full-compensation gains: pitch −ht·∂τa/∂v/∂τa/∂β, torque (ht/Ng)·∂τa/∂v.
double gamma_c_beta(const OperatingPoint& op, const PlatformParams& platform);
double gamma_c_tau_g(const OperatingPoint& op, const RotorGeometry& geom,
                     const PlatformParams& platform);

// Torque compensation fraction whose command at |φ̇| = φ̇max reaches
// τg,max exactly, clamped to [0, 1].
double m_tau_from_saturation(const OperatingPoint& op, const RotorGeometry& geom,
                             const PlatformParams& platform, double phi_dot_max,
                             double tau_g_max);

struct DualSplit {
  double m_beta = 0.0;
  double m_tau_g = 0.0;
};

DualSplit dual_split(const OperatingPoint& op, const RotorGeometry& geom,
                     const PlatformParams& platform, double phi_dot_max,
                     double tau_g_max);

enum class CompensationMode { none, beta, torque, dual };

struct CompensationOptions {
  CompensationMode mode = CompensationMode::none;
  double m_beta = 0.5;          // standalone pitch fraction, may be < 0
  double phi_dot_max = 0.0175;  // rad/s
  double tau_g_max_ratio = 1.2;  // of rated generator torque
};

// Gains indexed by trim pitch. Lookup between nodes is linear; outside the
// index range it holds the end values.
struct GainSchedule {
  std::vector<double> index;  // β̄, rad, strictly increasing
  std::vector<double> v_bar;
  std::vector<double> omega_pi;
  std::vector<double> zeta_pi;
  std::vector<double> kp;
  std::vector<double> ki;
  std::vector<double> kc_beta;
  std::vector<double> kc_tau_g;
  std::vector<double> m_beta;
  std::vector<double> m_tau_g;

  struct Entry {
    double v_bar, omega_pi, zeta_pi, kp, ki, kc_beta, kc_tau_g, m_beta, m_tau_g;
  };

  std::size_t size() const { return index.size(); }
  Entry at(double beta) const;
  void validate() const;
};

GainSchedule build_gain_schedule(const std::vector<OperatingPoint>& ops,
                                 const RotorGeometry& geom,
                                 const PlatformParams& platform,
                                 DetuneKind kind,
                                 const CompensationOptions& comp,
                                 const DetuneTargets& targets = {});

struct PlatformGains {
  double pid_kp = 0.0;  // N m/rad
  double pid_ki = 0.0;  // N m/(rad s)
  double pid_kd = 0.0;  // N m s/rad
  double ballast_ki = 0.0;             // N m/(rad s)
  double ballast_filter_cutoff = 0.0;  // rad/s
};

inline constexpr double kPlatformPidDamping = 0.7;

// Pole placement of (s² + 2ζωc·s + ωc²)(s + ωc) on the rigid platform with
// law τp = −(kp·φ + ki·∫φ + kd·φ̇).
PlatformGains tune_platform_pid(const PlatformParams& platform, double bandwidth);

struct BallastGains {
  double ki = 0.0;             // N m/(rad s)
  double filter_cutoff = 0.0;  // rad/s
};

// Integral ballast sized so the quasi-static loop kt·φ → ∫ → ballast has
// time constant settle_time/ln 10, i.e. 90 % recovery near settle_time.
// The mean-heel filter corner is 10/settle_time.
BallastGains tune_ballast(const PlatformParams& platform, double settle_time);

// Closed-loop 3-state platform matrix over (∫φ, φ, φ̇).
Eigen::Matrix3d platform_closed_loop(const PlatformParams& platform,
                                     const PlatformGains& gains);

// Rigid-platform speed loop over (θ̃, ω̃g) with the PI gains closed.
Eigen::Matrix2d rotor_closed_loop(const OperatingPoint& op,
                                  const RotorGeometry& geom, const PiGains& g);

// 4-state linear model with PI and compensation closed; inputs are the
// remaining disturbance channels.
Eigen::Matrix4d closed_loop_matrix(const LinearModel& model, const PiGains& g,
                                   double kc_beta, double kc_tau_g);

}  // namespace fowt

#endif  // FOWT_TUNING_HPP_
