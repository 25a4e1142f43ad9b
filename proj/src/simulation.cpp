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

#include "fowt/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fowt/csv.hpp"
#include "fowt/errors.hpp"
#include "fowt/rk4.hpp"

namespace fowt {

BallastMode parse_ballast_mode(const std::string& name) {
  if (name == "static_prior") return BallastMode::static_prior;
  if (name == "closed_loop") return BallastMode::closed_loop;
  throw ConfigError("unknown ballast mode '" + name + "'");
}

void SimConfig::validate() const {
  if (!(dt_plant > 0.0 && dt_ctrl > 0.0)) {
    throw ConfigError("simulation steps must be positive");
  }
  const double ratio = dt_ctrl / dt_plant;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || ratio < 1.0 - 1e-12) {
    throw ConfigError("controller step must be an integer multiple of the plant step");
  }
  if (!(duration > 0.0) || !(discard >= 0.0 && discard < duration)) {
    throw ConfigError("simulation needs 0 <= discard < duration");
  }
  if (!(overspeed_ratio > 1.0)) throw ConfigError("overspeed ratio must exceed 1");
}

int SimConfig::substeps() const {
  return static_cast<int>(std::lround(dt_ctrl / dt_plant));
}

long SimConfig::control_steps() const {
  return std::lround(std::floor(duration / dt_ctrl + 1e-9));
}

InitialCondition trim_initial_condition(const Plant& plant,
                                        const OperatingPoint& op,
                                        BallastMode mode) {
  InitialCondition ic;
  ic.beta_cmd = op.beta_bar;
  ic.tau_g = op.tau_g_bar;
  ic.state.omega_g = op.omega_bar;
  ic.state.beta_act = op.beta_bar;
  const double heel_moment = op.phi_bar * plant.platform.restoring;
  if (mode == BallastMode::static_prior) {
    ic.ballast = std::clamp(-heel_moment, -plant.actuators.ballast_moment_max,
                            plant.actuators.ballast_moment_max);
  }
  ic.state.ballast_act = ic.ballast;
  ic.state.phi = (heel_moment + ic.ballast) / plant.platform.restoring;
  return ic;
}

namespace {

SeriesRow make_row(double t, const FowtState& s, const PlantInputs& in,
                   const Plant& plant, const SimConfig& cfg) {
  SeriesRow r{};
  r.time = t;
  r.wind = in.wind;
  r.gen_speed = s.omega_g;
  r.pitch = s.phi;
  r.pitch_rate = s.phi_dot;
  r.beta = effective_pitch(s, in, plant.actuators);
  r.tau_g = in.tau_g;
  r.tau_p = plant.actuators.lags_enabled ? s.tau_p_act : in.tau_p_cmd;
  r.myt = tower_moment_proxy(s, in, plant, cfg.tower_share);
  r.power = s.omega_g * in.tau_g;
  return r;
}

bool healthy(const FowtState::Vector& x) {
  return x.allFinite() && std::abs(x[2]) < std::numbers::pi / 2 && x[1] > 0.0;
}

}  // namespace

SimResult integrate(const Plant& plant, Controller* controller,
                    const WindSeries& wind, const SimConfig& cfg,
                    const InitialCondition& init,
                    const std::function<double(double)>& disturbance) {
  cfg.validate();
  if (wind.duration() + 1e-9 < cfg.duration) {
    throw ConfigError(fmt::format("wind series covers {} s of a {} s run",
                                  wind.duration(), cfg.duration));
  }
  const int sub = cfg.substeps();
  const long steps = cfg.control_steps();
  const double h = cfg.dt_ctrl / sub;

  PlantInputs in;
  in.beta_cmd = init.beta_cmd;
  in.tau_g = init.tau_g;
  in.ballast_moment = init.ballast;

  FowtState::Vector x = init.state.to_vector();
  if (controller) {
    controller->initialize({init.state.omega_g, init.state.phi_dot, init.state.phi},
                           init.beta_cmd, init.ballast);
  }

  SimResult result;
  result.series.reserve(static_cast<std::size_t>(steps) + 1);

  const auto rhs = [&](double t, const FowtState::Vector& state) {
    PlantInputs stage = in;
    stage.wind = wind.at(t);
    stage.disturbance_moment = disturbance ? disturbance(t) : 0.0;
    return derivatives(FowtState::from_vector(state), stage, plant).to_vector();
  };

  double t = 0.0;
  try {
    for (long k = 0;; ++k) {
      t = k * cfg.dt_ctrl;
      const FowtState s = FowtState::from_vector(x);
      if (controller) {
        const Commands c = controller->step({s.omega_g, s.phi_dot, s.phi});
        in.beta_cmd = c.beta;
        in.tau_g = c.tau_g;
        in.tau_p_cmd = c.tau_p;
        in.ballast_moment = c.ballast;
      }
      in.wind = wind.at(t);
      in.disturbance_moment = disturbance ? disturbance(t) : 0.0;
      result.series.push_back(make_row(t, s, in, plant, cfg));
      if (k == steps) break;
      for (int j = 0; j < sub; ++j) {
        const double tj = t + j * h;
        x = rk4_step(rhs, tj, x, h);
        if (!healthy(x)) {
          throw DivergenceError("state left the admissible region", tj + h);
        }
      }
    }
  } catch (const DivergenceError& e) {
    result.diverged = true;
    result.divergence_time = e.time() > 0.0 ? e.time() : t;
    result.message = e.what();
  }
  result.final_state = FowtState::from_vector(x);
  return result;
}

SeriesSummary summarize(const std::vector<SeriesRow>& series, double discard) {
  SeriesSummary s;
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  double sum_m = 0.0;
  double sum_m2 = 0.0;
  double sum_p = 0.0;
  for (const SeriesRow& r : series) {
    if (r.time < discard - 1e-9) continue;
    ++s.samples;
    sum_w += r.gen_speed;
    sum_m += r.myt;
    sum_p += r.power;
    s.gen_speed_max = std::max(s.gen_speed_max, r.gen_speed);
    s.myt_max = std::max(s.myt_max, std::abs(r.myt));
    s.max_platform_pitch = std::max(s.max_platform_pitch, std::abs(r.pitch));
  }
  if (s.samples == 0) {
    throw DomainError("series holds no samples after the discard window");
  }
  const double n = static_cast<double>(s.samples);
  s.gen_speed_mean = sum_w / n;
  s.myt_mean = sum_m / n;
  s.mean_power = sum_p / n;
  // Second pass about the mean for accuracy.
  for (const SeriesRow& r : series) {
    if (r.time < discard - 1e-9) continue;
    sum_w2 += (r.gen_speed - s.gen_speed_mean) * (r.gen_speed - s.gen_speed_mean);
    sum_m2 += (r.myt - s.myt_mean) * (r.myt - s.myt_mean);
  }
  s.gen_speed_std = std::sqrt(sum_w2 / n);
  s.myt_std = std::sqrt(sum_m2 / n);
  return s;
}

RunMetrics normalize(const SeriesSummary& summary, double rated_gen_speed,
                     std::optional<double> myt_reference, double overspeed_ratio) {
  if (!myt_reference || !(*myt_reference > 0.0)) {
    throw ConfigError(
        "no tower-moment reference: run the Baseline variant at 12 m/s first");
  }
  RunMetrics m;
  m.gen_speed_std = summary.gen_speed_std / rated_gen_speed;
  m.gen_speed_max = summary.gen_speed_max / rated_gen_speed;
  m.myt_std = summary.myt_std / *myt_reference;
  m.myt_max = summary.myt_max / *myt_reference;
  m.mean_power = summary.mean_power;
  m.max_platform_pitch = summary.max_platform_pitch;
  m.overspeed = summary.gen_speed_max > overspeed_ratio * rated_gen_speed;
  return m;
}

RunMetrics compute_metrics(const std::vector<SeriesRow>& series,
                           const SimConfig& cfg, double rated_gen_speed,
                           std::optional<double> myt_reference) {
  return normalize(summarize(series, cfg.discard), rated_gen_speed,
                   myt_reference, cfg.overspeed_ratio);
}

void write_series_csv(const std::string& path,
                      const std::vector<SeriesRow>& series) {
  CsvWriter out(path, {"time", "wind", "gen_speed", "platform_pitch",
                       "platform_pitch_rate", "blade_pitch", "gen_torque",
                       "platform_moment", "tower_moment", "power"});
  for (const SeriesRow& r : series) {
    out.row({r.time, r.wind, r.gen_speed, r.pitch, r.pitch_rate, r.beta,
             r.tau_g, r.tau_p, r.myt, r.power});
  }
  out.close();
}

}  // namespace fowt
