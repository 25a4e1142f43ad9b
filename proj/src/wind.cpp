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

#include "fowt/wind.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "fowt/csv.hpp"
#include "fowt/errors.hpp"

namespace fowt {

WindKind parse_wind_kind(const std::string& name) {
  if (name == "turbulent") return WindKind::turbulent;
  if (name == "constant") return WindKind::constant;
  if (name == "step") return WindKind::step;
  if (name == "sine") return WindKind::sine;
  throw ConfigError("unknown wind kind '" + name + "'");
}

void WindConfig::validate() const {
  if (!(mean_speed > 0.0)) throw ConfigError("mean wind speed must be positive");
  if (!(dt > 0.0) || !(duration >= dt)) {
    throw ConfigError("wind sample time must be positive and within the duration");
  }
  if (!(i_ref >= 0.0) || !(length_scale > 0.0)) {
    throw ConfigError("turbulence parameters must be non-negative");
  }
  if (kind == WindKind::step && !(t_jump > 0.0 && t_jump < duration)) {
    throw ConfigError("wind step time must lie inside the series");
  }
  if (kind == WindKind::sine && !(period > 0.0)) {
    throw ConfigError("wind sine period must be positive");
  }
}

double WindConfig::target_sigma() const {
  return i_ref * (0.75 * mean_speed + 5.6);
}

double WindSeries::duration() const {
  return speed.empty() ? 0.0 : dt * static_cast<double>(speed.size() - 1);
}

double WindSeries::at(double t) const {
  if (speed.empty()) throw DomainError("empty wind series");
  if (t <= 0.0) return speed.front();
  const double x = t / dt;
  const auto i = static_cast<std::size_t>(x);
  if (i + 1 >= speed.size()) return speed.back();
  const double w = x - static_cast<double>(i);
  return speed[i] + w * (speed[i + 1] - speed[i]);
}

double WindSeries::mean() const {
  if (speed.empty()) return 0.0;
  return std::accumulate(speed.begin(), speed.end(), 0.0) /
         static_cast<double>(speed.size());
}

namespace {

std::size_t sample_count(const WindConfig& cfg) {
  return static_cast<std::size_t>(std::floor(cfg.duration / cfg.dt + 1e-9)) + 1;
}

// Standard normal pairs by Box-Muller on 53-bit uniforms, so the stream is
// identical on every standard library.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

WindSeries synthesize(const WindConfig& cfg) {
  cfg.validate();
  const std::size_t n = sample_count(cfg);
  WindSeries s;
  s.dt = cfg.dt;
  s.speed.assign(n, cfg.mean_speed);

  switch (cfg.kind) {
    case WindKind::constant:
      return s;
    case WindKind::step:
      return step_signal(cfg.mean_speed, cfg.jump, cfg.t_jump, cfg);
    case WindKind::sine:
      for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        s.speed[k] = std::max(
            cfg.mean_speed +
                cfg.amplitude * std::sin(2.0 * std::numbers::pi * t / cfg.period),
            kWindFloor);
      }
      return s;
    case WindKind::turbulent:
      break;
  }

  // First-order Kaimal-form process: exact discretization of
  // dx = −x/T dt + σ√(2/T) dW, started in its stationary distribution.
  const double sigma = cfg.target_sigma();
  const double a = std::exp(-cfg.dt / cfg.time_constant());
  const double drive = std::sqrt(1.0 - a * a);
  NormalStream normal(cfg.seed);
  std::vector<double> x(n);
  x[0] = normal.next();
  for (std::size_t k = 1; k < n; ++k) x[k] = a * x[k - 1] + drive * normal.next();

  // Remove the sample mean and match σ exactly.
  const double mean =
      std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double& v : x) {
    v -= mean;
    ss += v * v;
  }
  const double scale = ss > 0.0 ? sigma / std::sqrt(ss / static_cast<double>(n)) : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s.speed[k] = std::max(cfg.mean_speed + scale * x[k], kWindFloor);
  }
  return s;
}

WindSeries step_signal(double base, double jump, double t_jump,
                       const WindConfig& cfg) {
  if (!(t_jump > 0.0 && t_jump < cfg.duration)) {
    throw ConfigError("wind step time must lie inside the series");
  }
  const std::size_t n = sample_count(cfg);
  WindSeries s;
  s.dt = cfg.dt;
  s.speed.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    s.speed[k] = t + 1e-9 * cfg.dt >= t_jump ? base + jump : base;
  }
  return s;
}

void save_wind_csv(const std::string& path, const WindSeries& series) {
  CsvWriter out(path, {"time", "speed"});
  for (std::size_t k = 0; k < series.speed.size(); ++k) {
    out.row({series.dt * static_cast<double>(k), series.speed[k]});
  }
}

WindSeries load_wind_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::size_t t_col = table.column("time");
  const std::size_t v_col = table.column("speed");
  if (table.rows.size() < 2) throw ConfigError(path + ": wind series too short");
  WindSeries s;
  s.dt = table.number(1, t_col) - table.number(0, t_col);
  if (!(s.dt > 0.0) || table.number(0, t_col) != 0.0) {
    throw ConfigError(path + ": wind series must start at 0 with increasing time");
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const double t = table.number(r, t_col);
    if (std::abs(t - s.dt * static_cast<double>(r)) > 1e-6 * s.dt) {
      throw ConfigError(fmt::format("{}: non-uniform time at row {}", path, r + 1));
    }
    const double v = table.number(r, v_col);
    if (!(v > 0.0)) throw ConfigError(fmt::format("{}: wind speed at row {} not positive", path, r + 1));
    s.speed.push_back(v);
  }
  return s;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace fowt
