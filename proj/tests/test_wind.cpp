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


#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "fowt/errors.hpp"
#include "fowt/wind.hpp"

namespace fowt {
namespace {

WindConfig turbulent(double mean, std::uint64_t seed, double duration = 600.0) {
  WindConfig c;
  c.mean_speed = mean;
  c.seed = seed;
  c.duration = duration;
  return c;
}

double sample_std(const std::vector<double>& x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / x.size());
}

TEST(WindTest, NormalTurbulenceTarget) {
  EXPECT_NEAR(turbulent(18.0, 1).target_sigma(), 2.674, 1e-12);
}

TEST(WindTest, TurbulentStatisticsAtEighteenMetres) {
  for (std::uint64_t seed : {1ULL, 42ULL, 20260101ULL}) {
    const auto s = synthesize(turbulent(18.0, seed));
    EXPECT_EQ(s.speed.size(), 12001u);
    EXPECT_LT(std::abs(s.mean() - 18.0) / 18.0, 0.01);
    EXPECT_LT(std::abs(sample_std(s.speed) - 2.674) / 2.674, 0.05);
    for (double v : s.speed) EXPECT_GE(v, kWindFloor);
  }
}

TEST(WindTest, BitIdenticalForSameSeed) {
  const auto a = synthesize(turbulent(14.0, 77));
  const auto b = synthesize(turbulent(14.0, 77));
  EXPECT_TRUE(a.speed == b.speed);
  const auto c = synthesize(turbulent(14.0, 78));
  EXPECT_FALSE(a.speed == c.speed);
}

double correlation(const WindSeries& a, const WindSeries& b) {
  const double ma = a.mean(), mb = b.mean();
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < a.speed.size(); ++k) {
    sab += (a.speed[k] - ma) * (b.speed[k] - mb);
    saa += (a.speed[k] - ma) * (a.speed[k] - ma);
    sbb += (b.speed[k] - mb) * (b.speed[k] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TEST(WindTest, DifferentSeedsAreUncorrelated) {
  // A 600 s record holds only a dozen or so integral time scales, so any
  // single pair scatters widely; the bound is applied to the typical pair.
  std::vector<double> r;
  for (std::uint64_t i = 0; i < 40; i += 2) {
    r.push_back(std::abs(correlation(synthesize(turbulent(16.0, derive_seed(8, i))),
                                     synthesize(turbulent(16.0, derive_seed(8, i + 1))))));
  }
  std::sort(r.begin(), r.end());
  EXPECT_LT(0.5 * (r[9] + r[10]), 0.2);
  EXPECT_LT(r.back(), 0.9);
}

TEST(WindTest, EnsembleSpectrumFollowsShapingFilter) {
  const double duration = 1800.0;
  auto cfg = turbulent(18.0, 0, duration);
  const double a = std::exp(-cfg.dt / cfg.time_constant());
  const double sigma = cfg.target_sigma();
  const int seeds = 50;
  const std::size_t n = static_cast<std::size_t>(duration / cfg.dt);

  std::vector<double> freqs;
  for (int k = 1;; ++k) {
    const double w = 2.0 * std::numbers::pi * k / (n * cfg.dt);
    if (w > 1.0) break;
    if (w >= 0.01) freqs.push_back(w);
  }
  std::vector<double> power(freqs.size(), 0.0);
  for (int s = 0; s < seeds; ++s) {
    cfg.seed = derive_seed(555, s);
    const auto series = synthesize(cfg);
    const double mean = series.mean();
    for (std::size_t i = 0; i < freqs.size(); ++i) {
      std::complex<double> acc = 0.0;
      const std::complex<double> rot = std::polar(1.0, -freqs[i] * cfg.dt);
      std::complex<double> phase = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += (series.speed[k] - mean) * phase;
        phase *= rot;
      }
      power[i] += std::norm(acc) * cfg.dt / n / seeds;
    }
  }
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double model = sigma * sigma * cfg.dt * (1.0 - a * a) /
                         std::norm(1.0 - a * std::polar(1.0, -freqs[i] * cfg.dt));
    EXPECT_LT(std::abs(10.0 * std::log10(power[i] / model)), 3.0) << freqs[i];
  }
}

TEST(WindTest, ConstantAndSineKinds) {
  WindConfig c;
  c.kind = WindKind::constant;
  c.mean_speed = 11.4;
  c.duration = 10.0;
  for (double v : synthesize(c).speed) EXPECT_EQ(v, 11.4);
  c.kind = WindKind::sine;
  c.amplitude = 2.0;
  c.period = 8.0;
  const auto s = synthesize(c);
  EXPECT_NEAR(s.at(2.0), 13.4, 1e-12);
  EXPECT_NEAR(s.at(6.0), 9.4, 1e-12);
}

TEST(WindTest, StepBoundary) {
  WindConfig c;
  c.duration = 100.0;
  const auto s = step_signal(15.0, 2.0, 40.0, c);
  const auto k = static_cast<std::size_t>(std::lround(40.0 / c.dt));
  EXPECT_EQ(s.speed[k - 1], 15.0);
  EXPECT_EQ(s.speed[k], 17.0);
  const auto flat = step_signal(15.0, 0.0, 40.0, c);
  EXPECT_EQ(std::set<double>(flat.speed.begin(), flat.speed.end()).size(), 1u);
  EXPECT_THROW(step_signal(15.0, 1.0, 150.0, c), ConfigError);
}

TEST(WindTest, SeriesInterpolationAndHold) {
  WindSeries s;
  s.dt = 0.5;
  s.speed = {10.0, 12.0, 11.0};
  EXPECT_EQ(s.duration(), 1.0);
  EXPECT_EQ(s.at(-1.0), 10.0);
  EXPECT_EQ(s.at(0.25), 11.0);
  EXPECT_EQ(s.at(0.75), 11.5);
  EXPECT_EQ(s.at(5.0), 11.0);
}

TEST(WindTest, CsvRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "fowt_wind_roundtrip.csv").string();
  const auto a = synthesize(turbulent(20.0, 9, 60.0));
  save_wind_csv(path, a);
  const auto b = load_wind_csv(path);
  ASSERT_EQ(a.speed.size(), b.speed.size());
  EXPECT_DOUBLE_EQ(b.dt, a.dt);
  for (std::size_t k = 0; k < a.speed.size(); ++k) {
    EXPECT_NEAR(b.speed[k], a.speed[k], 1e-8 * a.speed[k]);
  }
  std::filesystem::remove(path);
}

TEST(WindTest, SeedDerivation) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(20260101, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}

TEST(WindTest, Validation) {
  WindConfig c;
  c.mean_speed = 0.0;
  EXPECT_THROW(synthesize(c), ConfigError);
  EXPECT_THROW(parse_wind_kind("gusty"), ConfigError);
}

}  // namespace
}  // namespace fowt
