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

#include "fowt/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fowt/errors.hpp"

namespace fowt {

void TransientSpec::validate() const {
  if (!(omega_pi > 0.0 && zeta_pi > 0.0)) {
    throw ConfigError("transient spec needs positive frequency and damping");
  }
}

namespace {

double rotor_gain(const RotorGeometry& geom) {
  return geom.gearbox_ratio / geom.rotor_inertia;
}

double pitch_authority(const OperatingPoint& op) {
  if (op.partials.dtau_dbeta == 0.0) {
    throw DegenerateError(fmt::format(
        "torque sensitivity to pitch vanishes at {} m/s", op.v_bar));
  }
  return op.partials.dtau_dbeta;
}

}  // namespace

PiGains pi_gains(const OperatingPoint& op, const TransientSpec& spec,
                 const RotorGeometry& geom) {
  const double b = rotor_gain(geom) * pitch_authority(op);
  const double a = rotor_gain(geom) * op.partials.dtau_domega;
  return {(a + 2.0 * spec.zeta_pi * spec.omega_pi) / b,
          spec.omega_pi * spec.omega_pi / b};
}

DetuneKind parse_detune_kind(const std::string& name) {
  if (name == "baseline") return DetuneKind::baseline;
  if (name == "detuned") return DetuneKind::detuned;
  if (name == "scheduled") return DetuneKind::scheduled;
  throw ConfigError("unknown detune kind '" + name + "'");
}

TransientSpec scheduled_spec(double v_bar, const RotorGeometry& geom,
                             const DetuneTargets& targets) {
  const double t = std::clamp(
      (v_bar - geom.rated_wind) / (geom.cutout_wind - geom.rated_wind), 0.0, 1.0);
  const TransientSpec& lo = targets.detuned;
  const TransientSpec& hi = targets.high_speed;
  return {lo.omega_pi + t * (hi.omega_pi - lo.omega_pi),
          lo.zeta_pi + t * (hi.zeta_pi - lo.zeta_pi)};
}

std::vector<TransientSpec> build_detune_schedule(
    DetuneKind kind, const std::vector<OperatingPoint>& ops,
    const RotorGeometry& geom, const DetuneTargets& targets) {
  std::vector<TransientSpec> out;
  out.reserve(ops.size());
  for (const auto& op : ops) {
    switch (kind) {
      case DetuneKind::baseline: out.push_back(targets.baseline); break;
      case DetuneKind::detuned: out.push_back(targets.detuned); break;
      case DetuneKind::scheduled:
        out.push_back(scheduled_spec(op.v_bar, geom, targets));
        break;
    }
  }
  return out;
}

double gamma_c_beta(const OperatingPoint& op, const PlatformParams& platform) {
  return -platform.hub_height * op.partials.dtau_dv / pitch_authority(op);
}

double gamma_c_tau_g(const OperatingPoint& op, const RotorGeometry& geom,
                     const PlatformParams& platform) {
  return platform.hub_height / geom.gearbox_ratio * op.partials.dtau_dv;
}

double m_tau_from_saturation(const OperatingPoint& op, const RotorGeometry& geom,
                             const PlatformParams& platform, double phi_dot_max,
                             double tau_g_max) {
  if (!(phi_dot_max > 0.0)) {
    throw ConfigError("maximum platform pitch rate must be positive");
  }
  if (!(tau_g_max >= geom.rated_gen_torque)) {
    throw ConfigError("maximum generator torque below rated");
  }
  const double gamma = gamma_c_tau_g(op, geom, platform);
  if (!(gamma > 0.0)) {
    throw DegenerateError(fmt::format(
        "torque compensation gain not positive at {} m/s", op.v_bar));
  }
  const double m = (tau_g_max - geom.rated_gen_torque) / (gamma * phi_dot_max);
  return std::clamp(m, 0.0, 1.0);
}

DualSplit dual_split(const OperatingPoint& op, const RotorGeometry& geom,
                     const PlatformParams& platform, double phi_dot_max,
                     double tau_g_max) {
  const double m = m_tau_from_saturation(op, geom, platform, phi_dot_max, tau_g_max);
  return {1.0 - m, m};
}

GainSchedule::Entry GainSchedule::at(double beta) const {
  const std::size_t n = index.size();
  if (n == 0) throw ConfigError("empty gain schedule");
  const auto pick = [&](std::size_t i) {
    return Entry{v_bar[i], omega_pi[i], zeta_pi[i], kp[i], ki[i],
                 kc_beta[i], kc_tau_g[i], m_beta[i], m_tau_g[i]};
  };
  if (n == 1 || beta <= index.front()) return pick(0);
  if (beta >= index.back()) return pick(n - 1);
  const auto it = std::upper_bound(index.begin(), index.end(), beta);
  const std::size_t i = static_cast<std::size_t>(it - index.begin()) - 1;
  const double w = (beta - index[i]) / (index[i + 1] - index[i]);
  const auto lerp = [&](const std::vector<double>& y) {
    return y[i] + w * (y[i + 1] - y[i]);
  };
  return Entry{lerp(v_bar), lerp(omega_pi), lerp(zeta_pi), lerp(kp), lerp(ki),
               lerp(kc_beta), lerp(kc_tau_g), lerp(m_beta), lerp(m_tau_g)};
}

void GainSchedule::validate() const {
  const std::size_t n = index.size();
  if (n == 0) throw ConfigError("empty gain schedule");
  for (const auto* col : {&v_bar, &omega_pi, &zeta_pi, &kp, &ki, &kc_beta,
                          &kc_tau_g, &m_beta, &m_tau_g}) {
    if (col->size() != n) throw ConfigError("ragged gain schedule");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(index[i] > index[i - 1])) {
      throw ConfigError("gain schedule pitch index not strictly increasing");
    }
  }
}

GainSchedule build_gain_schedule(const std::vector<OperatingPoint>& ops,
                                 const RotorGeometry& geom,
                                 const PlatformParams& platform,
                                 DetuneKind kind,
                                 const CompensationOptions& comp,
                                 const DetuneTargets& targets) {
  const auto specs = build_detune_schedule(kind, ops, geom, targets);
  const double tau_g_max = comp.tau_g_max_ratio * geom.rated_gen_torque;
  GainSchedule s;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const OperatingPoint& op = ops[i];
    const PiGains g = pi_gains(op, specs[i], geom);
    double m_beta = 0.0;
    double m_tau = 0.0;
    switch (comp.mode) {
      case CompensationMode::none: break;
      case CompensationMode::beta: m_beta = comp.m_beta; break;
      case CompensationMode::torque:
        m_tau = m_tau_from_saturation(op, geom, platform, comp.phi_dot_max,
                                      tau_g_max);
        break;
      case CompensationMode::dual: {
        const DualSplit d =
            dual_split(op, geom, platform, comp.phi_dot_max, tau_g_max);
        m_beta = d.m_beta;
        m_tau = d.m_tau_g;
        break;
      }
    }
    s.index.push_back(op.beta_bar);
    s.v_bar.push_back(op.v_bar);
    s.omega_pi.push_back(specs[i].omega_pi);
    s.zeta_pi.push_back(specs[i].zeta_pi);
    s.kp.push_back(g.kp);
    s.ki.push_back(g.ki);
    s.kc_beta.push_back(m_beta * gamma_c_beta(op, platform));
    s.kc_tau_g.push_back(m_tau == 0.0 ? 0.0
                                      : m_tau * gamma_c_tau_g(op, geom, platform));
    s.m_beta.push_back(m_beta);
    s.m_tau_g.push_back(m_tau);
  }
  s.validate();
  return s;
}

PlatformGains tune_platform_pid(const PlatformParams& platform, double bandwidth) {
  platform.validate();
  if (!(bandwidth > platform.natural_frequency())) {
    throw ConfigError(fmt::format(
        "platform bandwidth {} rad/s must exceed the natural frequency {:.4f} rad/s",
        bandwidth, platform.natural_frequency()));
  }
  const double z = kPlatformPidDamping;
  const double w = bandwidth;
  const double j = platform.inertia;
  PlatformGains g;
  g.pid_kd = j * (2.0 * z + 1.0) * w - platform.damping;
  g.pid_kp = j * w * w * (1.0 + 2.0 * z) - platform.restoring;
  g.pid_ki = j * w * w * w;
  return g;
}

BallastGains tune_ballast(const PlatformParams& platform, double settle_time) {
  platform.validate();
  if (!(settle_time >= 120.0)) {
    throw ConfigError(fmt::format(
        "ballast settle time {} s below the 120 s actuator lag", settle_time));
  }
  return {platform.restoring * std::numbers::ln10 / settle_time,
          10.0 / settle_time};
}

Eigen::Matrix3d platform_closed_loop(const PlatformParams& platform,
                                     const PlatformGains& g) {
  const double j = platform.inertia;
  Eigen::Matrix3d a;
  a << 0.0, 1.0, 0.0,
       0.0, 0.0, 1.0,
       -g.pid_ki / j, -(platform.restoring + g.pid_kp) / j,
       -(platform.damping + g.pid_kd) / j;
  return a;
}

Eigen::Matrix2d rotor_closed_loop(const OperatingPoint& op,
                                  const RotorGeometry& geom, const PiGains& g) {
  const double a = rotor_gain(geom) * op.partials.dtau_domega;
  const double b = rotor_gain(geom) * op.partials.dtau_dbeta;
  Eigen::Matrix2d m;
  m << 0.0, 1.0,
       -b * g.ki, a - b * g.kp;
  return m;
}

Eigen::Matrix4d closed_loop_matrix(const LinearModel& model, const PiGains& g,
                                   double kc_beta, double kc_tau_g) {
  Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
  k(kBladePitch, kTheta) = g.ki;
  k(kBladePitch, kGenSpeed) = g.kp;
  k(kBladePitch, kPitchRate) = kc_beta;
  k(kGenTorque, kPitchRate) = kc_tau_g;
  return model.a - model.b * k;
}

}  // namespace fowt
