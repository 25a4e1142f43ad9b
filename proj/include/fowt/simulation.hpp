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


#ifndef FOWT_SIMULATION_HPP_
#define FOWT_SIMULATION_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fowt/controller.hpp"
#include "fowt/linearization.hpp"
#include "fowt/plant.hpp"
#include "fowt/wind.hpp"

namespace fowt {

// static_prior: the ballast moment is fixed before the run to cancel the
// trim heel. closed_loop: the ballast starts empty and the integral loop
// moves it.
enum class BallastMode { static_prior, closed_loop };

BallastMode parse_ballast_mode(const std::string& name);

struct SimConfig {
  double duration = 800.0;  // s
  double discard = 200.0;   // s
  double dt_plant = 0.005;  // s
  double dt_ctrl = 0.02;    // s
  BallastMode ballast_mode = BallastMode::static_prior;
  double tower_share = 0.5;      // fraction of kt·φ in the tower moment proxy
  double overspeed_ratio = 1.2;  // of rated generator speed

  void validate() const;
  int substeps() const;
  long control_steps() const;
};

struct InitialCondition {
  FowtState state;
  double beta_cmd = 0.0;
  double tau_g = 0.0;
  double ballast = 0.0;
};

// Trim at the operating point: rated speed, trim pitch, zero pitch rate.
// With a static prior ballast the heel is cancelled and φ starts at 0.
InitialCondition trim_initial_condition(const Plant& plant,
                                        const OperatingPoint& op,
                                        BallastMode mode);

// One row per controller sample.
struct SeriesRow {
  double time, wind, gen_speed, pitch, pitch_rate, beta, tau_g, tau_p, myt, power;
};

struct SimResult {
  std::vector<SeriesRow> series;
  FowtState final_state;
  bool diverged = false;
  double divergence_time = 0.0;
  std::string message;
};

// Fixed-step RK4 at dt_plant with the controller sampled every dt_ctrl and
// its commands held in between. Without a controller the initial commands
// are held for the whole run. `disturbance` adds an external platform
// moment as a function of time.
SimResult integrate(const Plant& plant, Controller* controller,
                    const WindSeries& wind, const SimConfig& cfg,
                    const InitialCondition& init,
                    const std::function<double(double)>& disturbance = {});

// Raw statistics over t ≥ discard.
struct SeriesSummary {
  double gen_speed_mean = 0.0;
  double gen_speed_std = 0.0;
  double gen_speed_max = 0.0;
  double myt_mean = 0.0;
  double myt_std = 0.0;
  double myt_max = 0.0;  // max |Myt|
  double mean_power = 0.0;
  double max_platform_pitch = 0.0;  // max |φ|
  std::size_t samples = 0;
};

SeriesSummary summarize(const std::vector<SeriesRow>& series, double discard);

struct RunMetrics {
  double gen_speed_std = 0.0;  // / rated
  double gen_speed_max = 0.0;  // / rated
  double myt_std = 0.0;        // / reference
  double myt_max = 0.0;        // / reference
  double mean_power = 0.0;     // W
  double max_platform_pitch = 0.0;  // rad
  bool overspeed = false;
};

// Normalizes by rated generator speed and the reference tower moment.
// Throws ConfigError when no reference is available.
RunMetrics normalize(const SeriesSummary& summary, double rated_gen_speed,
                     std::optional<double> myt_reference,
                     double overspeed_ratio = 1.2);

RunMetrics compute_metrics(const std::vector<SeriesRow>& series,
                           const SimConfig& cfg, double rated_gen_speed,
                           std::optional<double> myt_reference);

void write_series_csv(const std::string& path, const std::vector<SeriesRow>& series);

}  // namespace fowt

#endif  // FOWT_SIMULATION_HPP_
