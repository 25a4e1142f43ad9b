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

#include "fowt/linearization.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fowt/errors.hpp"
#include "fowt/state_space.hpp"

namespace fowt {

namespace {

constexpr double kTrimTol = 1e-10;

}  // namespace

OperatingPoint find_operating_point(const RotorGeometry& geom,
                                    const PerformanceSurface& surface,
                                    const PlatformParams& platform,
                                    double v_bar) {
  geom.validate();
  platform.validate();
  if (!(v_bar > geom.rated_wind && v_bar <= geom.cutout_wind)) {
    throw DomainError(fmt::format(
        "trim wind {} m/s outside the above-rated range ({}, {}]", v_bar,
        geom.rated_wind, geom.cutout_wind));
  }
  const double omega = geom.rated_gen_speed;
  const double target = geom.gearbox_ratio * geom.rated_gen_torque;
  const auto residual = [&](double beta) {
    return (aero_torque(geom, surface, omega, v_bar, beta) - target) / target;
  };

  // Candidate brackets: pitch limits plus every surface node between them.
  // Torque is linear in pitch inside a cell, so the secant step is exact
  // once the bracket is a single cell.
  std::vector<double> nodes{geom.beta_min};
  for (double b : surface.beta_grid()) {
    if (b > geom.beta_min && b < geom.beta_max) nodes.push_back(b);
  }
  nodes.push_back(geom.beta_max);

  double lo = 0.0;
  double hi = 0.0;
  double r_lo = residual(nodes.front());
  bool found = false;
  if (std::abs(r_lo) <= kTrimTol) {
    lo = hi = nodes.front();
    found = true;
  }
  for (std::size_t i = 1; i < nodes.size() && !found; ++i) {
    const double r = residual(nodes[i]);
    if (r_lo > 0.0 && r <= 0.0) {
      lo = nodes[i - 1];
      hi = nodes[i];
      found = true;
      break;
    }
    r_lo = r;
  }
  if (!found) {
    throw NoTrimError(fmt::format(
        "no pitch in [{}, {}] rad balances rated torque at {} m/s",
        geom.beta_min, geom.beta_max, v_bar));
  }

  double beta = lo;
  if (hi > lo) {
    double f_lo = residual(lo);
    double f_hi = residual(hi);
    for (int it = 0; it < 200; ++it) {
      // Secant inside the bracket, bisection when it stalls.
      double x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
      if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
      const double fx = residual(x);
      beta = x;
      if (std::abs(fx) <= kTrimTol) break;
      const double width = hi - lo;
      if (fx > 0.0) {
        lo = x;
        f_lo = fx;
      } else {
        hi = x;
        f_hi = fx;
      }
      if (hi - lo > 0.5 * width) {
        const double mid = 0.5 * (lo + hi);
        const double fm = residual(mid);
        beta = mid;
        if (std::abs(fm) <= kTrimTol) break;
        if (fm > 0.0) {
          lo = mid;
          f_lo = fm;
        } else {
          hi = mid;
          f_hi = fm;
        }
      }
    }
  }
  if (std::abs(residual(beta)) > kTrimTol) {
    throw NoTrimError(fmt::format("trim solve did not converge at {} m/s", v_bar));
  }

  OperatingPoint op;
  op.v_bar = v_bar;
  op.beta_bar = beta;
  op.omega_bar = omega;
  op.tau_g_bar = geom.rated_gen_torque;
  op.phi_bar = platform.hub_height *
               aero_thrust(geom, surface, omega, v_bar, beta) /
               platform.restoring;
  op.partials = partials(geom, surface, omega, v_bar, beta);
  return op;
}

std::vector<OperatingPoint> find_operating_points(
    const RotorGeometry& geom, const PerformanceSurface& surface,
    const PlatformParams& platform, const std::vector<double>& speeds) {
  std::vector<OperatingPoint> ops;
  ops.reserve(speeds.size());
  for (double v : speeds) {
    ops.push_back(find_operating_point(geom, surface, platform, v));
  }
  return ops;
}

std::vector<double> tuning_speeds(const RotorGeometry& geom, double spacing) {
  if (!(spacing > 0.0)) throw ConfigError("tuning grid spacing must be positive");
  std::vector<double> v;
  const double start = geom.rated_wind + 0.1;
  for (int k = 0;; ++k) {
    const double x = start + k * spacing;
    if (x > geom.cutout_wind + 1e-9) break;
    v.push_back(x);
  }
  if (v.empty() || v.back() < geom.cutout_wind - 1e-9) {
    v.push_back(geom.cutout_wind);
  }
  return v;
}

std::vector<double> reference_speeds() {
  std::vector<double> v;
  for (int s = 12; s <= 24; ++s) v.push_back(s);
  return v;
}

LinearModel build_state_space(const OperatingPoint& op,
                              const RotorGeometry& geom,
                              const PlatformParams& platform) {
  geom.validate();
  platform.validate();
  const AeroPartials& d = op.partials;
  const double ng = geom.gearbox_ratio;
  const double gen = ng / geom.rotor_inertia;
  const double ht = platform.hub_height;
  const double jt = platform.inertia;

  LinearModel m;
  m.op = op;
  m.a(kTheta, kGenSpeed) = 1.0;
  m.a(kGenSpeed, kGenSpeed) = gen * d.dtau_domega;
  m.a(kGenSpeed, kPitchRate) = -ht * gen * d.dtau_dv;
  m.a(kPitch, kPitchRate) = 1.0;
  m.a(kPitchRate, kGenSpeed) = ht / jt * d.dthrust_domega;
  m.a(kPitchRate, kPitch) = -platform.restoring / jt;
  m.a(kPitchRate, kPitchRate) =
      -(platform.damping + ht * ht * d.dthrust_dv) / jt;

  m.b(kGenSpeed, kWind) = gen * d.dtau_dv;
  m.b(kGenSpeed, kBladePitch) = gen * d.dtau_dbeta;
  m.b(kGenSpeed, kGenTorque) = -ng * ng / geom.rotor_inertia;
  m.b(kPitchRate, kWind) = ht / jt * d.dthrust_dv;
  m.b(kPitchRate, kBladePitch) = ht / jt * d.dthrust_dbeta;
  m.b(kPitchRate, kPlatformMoment) = 1.0 / jt;

  m.nmpz = nmpz_predicate(op, platform);
  return m;
}

double nmpz_coupling(const OperatingPoint& op, const PlatformParams& platform,
                     double m_tau_g) {
  const AeroPartials& d = op.partials;
  if (d.dtau_dbeta == 0.0) {
    throw DegenerateError("torque sensitivity to pitch is zero");
  }
  const double ht = platform.hub_height;
  return ht * ht *
         (d.dthrust_dv -
          (1.0 - m_tau_g) * d.dtau_dv * d.dthrust_dbeta / d.dtau_dbeta);
}

bool nmpz_predicate(const OperatingPoint& op, const PlatformParams& platform) {
  return nmpz_coupling(op, platform, 0.0) < -platform.damping;
}

bool nmpz_compensated(const OperatingPoint& op, const PlatformParams& platform,
                      double m_tau_g) {
  if (!(m_tau_g >= 0.0 && m_tau_g <= 1.0)) {
    throw ConfigError(fmt::format("torque compensation fraction {} not in [0, 1]",
                                  m_tau_g));
  }
  return nmpz_coupling(op, platform, m_tau_g) < -platform.damping;
}

LinearModel with_compensation(const LinearModel& model, double kc_beta,
                              double kc_tau_g) {
  LinearModel out = model;
  out.a.col(kPitchRate) -= kc_beta * model.b.col(kBladePitch) +
                           kc_tau_g * model.b.col(kGenTorque);
  return out;
}

std::vector<std::complex<double>> transmission_zeros(const LinearModel& model,
                                                     int input, int output) {
  if (input < 0 || input > 3 || output < 0 || output > 3) {
    throw DomainError("state-space channel index out of range");
  }
  const Eigen::Vector4d b = model.b.col(input);
  const Eigen::RowVector4d c = Eigen::RowVector4d::Unit(output);
  return siso_zeros(model.a, b, c, 0.0);
}

bool has_rhp_zero(const std::vector<std::complex<double>>& zeros, double tol) {
  return std::any_of(zeros.begin(), zeros.end(),
                     [tol](const auto& z) { return z.real() > tol; });
}

}  // namespace fowt
