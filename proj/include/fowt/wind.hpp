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


#ifndef FOWT_WIND_HPP_
#define FOWT_WIND_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace fowt {

enum class WindKind { turbulent, constant, step, sine };

WindKind parse_wind_kind(const std::string& name);

struct WindConfig {
  double mean_speed = 18.0;  // m/s
  double i_ref = 0.14;
  std::uint64_t seed = 0;
  double dt = 0.05;          // s
  double duration = 800.0;   // s
  WindKind kind = WindKind::turbulent;
  double length_scale = 340.2;  // m, Kaimal integral scale
  double jump = 0.0;            // m/s, step kind
  double t_jump = 0.0;          // s, step kind
  double amplitude = 0.0;       // m/s, sine kind
  double period = 60.0;         // s, sine kind

  void validate() const;
  // i_ref·(0.75·V + 5.6)
  double target_sigma() const;
  double time_constant() const { return length_scale / mean_speed; }
};

inline constexpr double kWindFloor = 0.5;  // m/s

// Uniformly sampled series starting at t = 0.
struct WindSeries {
  double dt = 0.0;
  std::vector<double> speed;

  double duration() const;
  // Linear interpolation, held constant past either end.
  double at(double t) const;
  double mean() const;
};

WindSeries synthesize(const WindConfig& cfg);

WindSeries step_signal(double base, double jump, double t_jump,
                       const WindConfig& cfg);

// Two-column CSV (time, speed) with uniform spacing.
void save_wind_csv(const std::string& path, const WindSeries& series);
WindSeries load_wind_csv(const std::string& path);

// Seed for stream `index` from a master seed (SplitMix64 counter).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace fowt

#endif  // FOWT_WIND_HPP_
