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

#include "fowt/controller.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fowt/errors.hpp"

namespace fowt {

void ControllerConfig::validate() const {
  schedule.validate();
  if (!(dt > 0.0)) throw ConfigError("controller sample time must be positive");
  if (!(beta_min < beta_max) || !(beta_rate_max > 0.0)) {
    throw ConfigError("controller pitch limits inconsistent");
  }
  if (!(rated_gen_speed > 0.0 && rated_gen_torque > 0.0 &&
        tau_g_max >= rated_gen_torque)) {
    throw ConfigError("controller torque limits inconsistent");
  }
  if (!(filters.speed_lpf_ratio > 0.0 && filters.pitch_rate_lpf > 0.0 &&
        filters.pitch_rate_hpf > 0.0 && filters.schedule_lpf > 0.0)) {
    throw ConfigError("filter corners must be positive");
  }
  if (!(tau_p_max >= 0.0 && ballast_max >= 0.0 && kw2_gain >= 0.0)) {
    throw ConfigError("actuator limits must be non-negative");
  }
  if ((use_ballast || use_platform_pid) &&
      !(platform_gains.ballast_filter_cutoff > 0.0)) {
    throw ConfigError("platform control needs a positive mean-heel filter corner");
  }
}

ControllerConfig make_controller_config(const RotorGeometry& geom,
                                        const ActuatorParams& actuators,
                                        GainSchedule schedule,
                                        double tau_g_max_ratio) {
  ControllerConfig c;
  c.schedule = std::move(schedule);
  c.rated_gen_speed = geom.rated_gen_speed;
  c.rated_gen_torque = geom.rated_gen_torque;
  c.tau_g_max = tau_g_max_ratio * geom.rated_gen_torque;
  c.beta_min = geom.beta_min;
  c.beta_max = geom.beta_max;
  c.beta_rate_max = geom.beta_rate_max;
  c.tau_p_max = actuators.platform_moment_max;
  c.ballast_max = actuators.ballast_moment_max;
  return c;
}

double optimal_kw2_gain(const RotorGeometry& geom,
                        const PerformanceSurface& surface) {
  // Peak over tabulated λ at the lowest pitch allowed.
  const auto& lg = surface.lambda_grid();
  double best_cp = -1.0;
  double best_lambda = lg[0];
  for (Eigen::Index i = 0; i < lg.size(); ++i) {
    const double cp = surface.lookup(Coefficient::power, lg[i], geom.beta_min).value;
    if (cp > best_cp) {
      best_cp = cp;
      best_lambda = lg[i];
    }
  }
  const double r = geom.radius;
  const double ng = geom.gearbox_ratio;
  return 0.5 * geom.air_density * std::numbers::pi * std::pow(r, 5) * best_cp /
         (std::pow(best_lambda, 3) * std::pow(ng, 3));
}

double anti_windup(double integrator, double increment, double command,
                   double limited_command) {
  const double excess = command - limited_command;
  if (excess != 0.0 && increment * excess > 0.0) return integrator;
  return integrator + increment;
}

Controller::Controller(ControllerConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  state_.rate_low = SecondOrderLowPass(cfg_.filters.pitch_rate_lpf);
  state_.rate_high = FirstOrderHighPass(cfg_.filters.pitch_rate_hpf);
  const double heel_corner = cfg_.platform_gains.ballast_filter_cutoff > 0.0
                                 ? cfg_.platform_gains.ballast_filter_cutoff
                                 : 1.0;
  state_.heel_mean = FirstOrderLowPass(heel_corner);
  state_.schedule_pitch = FirstOrderLowPass(cfg_.filters.schedule_lpf);
}

void Controller::initialize(const Measurement& meas, double beta,
                            double ballast) {
  const auto gains = cfg_.schedule.at(beta);
  state_.speed_filter =
      SecondOrderLowPass(cfg_.filters.speed_lpf_ratio * gains.omega_pi);
  state_.speed_filter.reset(meas.gen_speed);
  state_.rate_low.reset(meas.pitch_rate);
  state_.rate_high.reset(meas.pitch_rate);
  state_.heel_mean.reset(meas.pitch);
  state_.schedule_pitch.reset(beta);
  state_.speed_error_integral = gains.ki != 0.0 ? -beta / gains.ki : 0.0;
  state_.platform_integral = 0.0;
  state_.ballast = ballast;
  state_.above_rated =
      beta > cfg_.beta_min || meas.gen_speed >= cfg_.rated_gen_speed;
  state_.last = Commands{beta, cfg_.rated_gen_torque, 0.0, ballast, false};
  if (!state_.above_rated) {
    state_.last.tau_g = std::min(
        cfg_.kw2_gain * meas.gen_speed * meas.gen_speed, cfg_.rated_gen_torque);
  }
}

Commands Controller::step(const Measurement& meas) {
  if (!std::isfinite(meas.gen_speed) || !std::isfinite(meas.pitch_rate) ||
      !std::isfinite(meas.pitch)) {
    Commands held = state_.last;
    held.fault = true;
    return held;
  }
  const double dt = cfg_.dt;
  // Gains follow a smoothed pitch. Looking them up from the raw previous
  // command closes a one-step loop through the integral term, which is
  // unstable wherever the integral gain varies steeply with pitch.
  const auto gains = cfg_.schedule.at(state_.schedule_pitch.output());

  const double speed = state_.speed_filter.step(
      meas.gen_speed, dt, cfg_.filters.speed_lpf_ratio * gains.omega_pi);
  const double rate =
      state_.rate_high.step(state_.rate_low.step(meas.pitch_rate, dt), dt);
  const double heel_mean = state_.heel_mean.step(meas.pitch, dt);

  const bool pitch_comp = cfg_.compensation == CompensationMode::beta ||
                          cfg_.compensation == CompensationMode::dual;
  const bool torque_comp = cfg_.compensation == CompensationMode::torque ||
                           cfg_.compensation == CompensationMode::dual;

  Commands out;

  // Blade pitch: PI on speed error plus parallel compensation, then
  // position and rate limits on the sum.
  const double error = speed - cfg_.rated_gen_speed;
  // The scheduled integral gain multiplies the accumulated error, so the
  // mean speed error is driven to zero whatever the gain history.
  const double integral = state_.speed_error_integral + error * dt;
  const double beta_raw = -gains.kp * error - gains.ki * integral +
                          (pitch_comp ? pitch_compensation(gains.kc_beta, rate) : 0.0);
  // The integral follows position saturation only; the rate limit acts on
  // the final command.
  const double beta_pos = std::clamp(beta_raw, cfg_.beta_min, cfg_.beta_max);
  const double pushed = anti_windup(0.0, -gains.ki * error * dt, beta_raw, beta_pos);
  if (pushed != 0.0 || error == 0.0) state_.speed_error_integral = integral;
  const double step_max = cfg_.beta_rate_max * dt;
  const double beta = std::clamp(beta_pos, state_.last.beta - step_max,
                                 state_.last.beta + step_max);
  out.beta = beta;

  // Generator torque with hysteresis between the kω² and rated modes.
  if (state_.above_rated && beta <= cfg_.beta_min &&
      speed < (1.0 - cfg_.region_hysteresis) * cfg_.rated_gen_speed) {
    state_.above_rated = false;
  } else if (!state_.above_rated && speed >= cfg_.rated_gen_speed) {
    state_.above_rated = true;
  }
  double tau_g = 0.0;
  if (state_.above_rated) {
    tau_g = cfg_.rated_gen_torque +
            (torque_comp ? torque_compensation(gains.kc_tau_g, rate) : 0.0);
  } else {
    tau_g = std::min(cfg_.kw2_gain * speed * speed, cfg_.rated_gen_torque);
  }
  out.tau_g = std::clamp(tau_g, 0.0, cfg_.tau_g_max);

  // Platform PID about the slow mean heel, which the ballast owns.
  if (cfg_.use_platform_pid) {
    const PlatformGains& pg = cfg_.platform_gains;
    const double e = meas.pitch - heel_mean;
    const double inc = -pg.pid_ki * e * dt;
    const double raw = -(pg.pid_kp * e + pg.pid_kd * meas.pitch_rate) +
                       state_.platform_integral + inc;
    out.tau_p = std::clamp(raw, -cfg_.tau_p_max, cfg_.tau_p_max);
    state_.platform_integral =
        anti_windup(state_.platform_integral, inc, raw, out.tau_p);
  }

  if (cfg_.use_ballast) {
    const double inc = -cfg_.platform_gains.ballast_ki * heel_mean * dt;
    const double raw = state_.ballast + inc;
    const double limited = std::clamp(raw, -cfg_.ballast_max, cfg_.ballast_max);
    state_.ballast = anti_windup(state_.ballast, inc, raw, limited);
  }
  out.ballast = state_.ballast;

  state_.schedule_pitch.step(out.beta, dt);
  state_.last = out;
  return out;
}

}  // namespace fowt
