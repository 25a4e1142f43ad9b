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


#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "fowt/errors.hpp"
#include "fowt/rotor_aero.hpp"
#include "support.hpp"

namespace fowt {
namespace {

using testing::constant_surface;
using testing::default_surface;
using testing::relative_error;

PerformanceSurface small_table() {
  Eigen::VectorXd lambda(3), beta(3);
  lambda << 5.0, 7.0, 9.0;
  beta << 0.0, 0.2, 0.4;
  Eigen::MatrixXd cp(3, 3), ct(3, 3);
  cp << 0.30, 0.25, 0.10,
        0.45, 0.35, 0.20,
        0.40, 0.30, 0.15;
  ct << 0.9, 0.7, 0.5,
        1.0, 0.8, 0.6,
        1.1, 0.9, 0.7;
  return PerformanceSurface(lambda, beta, cp, ct);
}

TEST(PerformanceSurfaceTest, ExactAtNodes) {
  const auto s = small_table();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto hit = s.lookup(Coefficient::power, s.lambda_grid()[i], s.beta_grid()[j]);
      EXPECT_EQ(hit.value, s.cp_table()(i, j));
      EXPECT_FALSE(hit.clamped);
      EXPECT_EQ(s.lookup(Coefficient::thrust, s.lambda_grid()[i], s.beta_grid()[j]).value,
                s.ct_table()(i, j));
    }
  }
}

TEST(PerformanceSurfaceTest, MidpointIsCornerMean) {
  const auto s = small_table();
  const double mean = (0.45 + 0.35 + 0.40 + 0.30) / 4.0;
  EXPECT_NEAR(s.lookup(Coefficient::power, 8.0, 0.1).value, mean, 1e-15);
}

TEST(PerformanceSurfaceTest, HandBilinearWeights) {
  // (7.5, 0.1) sits a quarter of the way into the second λ cell and half way
  // across the first β cell.
  const auto s = small_table();
  const double wl = 0.25;
  const double wb = 0.5;
  const double expected = (1 - wl) * ((1 - wb) * 0.45 + wb * 0.35) +
                          wl * ((1 - wb) * 0.40 + wb * 0.30);
  EXPECT_NEAR(s.lookup(Coefficient::power, 7.5, 0.1).value, expected, 1e-15);
  EXPECT_NEAR(expected, 0.3875, 1e-15);
}

TEST(PerformanceSurfaceTest, ContinuousAcrossCellBoundaries) {
  const auto& s = default_surface();
  const double eps = 1e-13;
  for (int i = 5; i < s.lambda_grid().size() - 5; i += 37) {
    const double edge = s.lambda_grid()[i];
    for (double beta : {0.0123, 0.2117, 0.4561}) {
      const double below = s.lookup(Coefficient::power, edge - eps, beta).value;
      const double above = s.lookup(Coefficient::power, edge + eps, beta).value;
      EXPECT_LT(std::abs(above - below), 1e-12);
    }
  }
  for (int j = 3; j < s.beta_grid().size() - 3; j += 29) {
    const double edge = s.beta_grid()[j];
    const double below = s.lookup(Coefficient::thrust, 7.77, edge - eps).value;
    const double above = s.lookup(Coefficient::thrust, 7.77, edge + eps).value;
    EXPECT_LT(std::abs(above - below), 1e-12);
  }
}

TEST(PerformanceSurfaceTest, ClampsOutsideHullWithFlag) {
  const auto s = small_table();
  const auto low = s.lookup(Coefficient::power, 1.0, -0.3);
  EXPECT_TRUE(low.clamped);
  EXPECT_EQ(low.value, 0.30);
  const auto high = s.lookup(Coefficient::thrust, 20.0, 0.2);
  EXPECT_TRUE(high.clamped);
  EXPECT_EQ(high.value, 0.9);
}

TEST(PerformanceSurfaceTest, RejectsMalformedTables) {
  Eigen::VectorXd lambda(3), beta(2);
  lambda << 1.0, 2.0, 3.0;
  beta << 0.0, 0.1;
  const Eigen::MatrixXd ok = Eigen::MatrixXd::Constant(3, 2, 0.3);
  EXPECT_THROW(PerformanceSurface(lambda, beta, Eigen::MatrixXd::Zero(2, 2), ok),
               ConfigError);
  EXPECT_THROW(PerformanceSurface(lambda, beta, Eigen::MatrixXd::Constant(3, 2, 0.6), ok),
               ConfigError);
  EXPECT_THROW(PerformanceSurface(lambda, beta, ok, Eigen::MatrixXd::Constant(3, 2, -0.1)),
               ConfigError);
  Eigen::VectorXd unsorted(3);
  unsorted << 1.0, 3.0, 2.0;
  EXPECT_THROW(PerformanceSurface(unsorted, beta, ok, ok), ConfigError);
  EXPECT_THROW(PerformanceSurface(Eigen::VectorXd(0), beta, Eigen::MatrixXd(0, 2),
                                  Eigen::MatrixXd(0, 2)),
               ConfigError);
}

TEST(AeroLoadsTest, ClosedFormTorqueAndThrust) {
  const RotorGeometry geom;
  const double area = std::numbers::pi * 89.15 * 89.15;
  const double v = 11.4;
  // Generator speed 50 rad/s keeps λ = 7.82 inside the test table.
  const double torque = aero_torque(geom, constant_surface(0.4, 0.8), 50.0, v, 0.1);
  EXPECT_NEAR(relative_error(torque, 0.5 * 1.225 * area * v * v * v * 0.4 * 50.0 / 50.0),
              0.0, 1e-14);
  const double thrust = aero_thrust(geom, constant_surface(0.4, 0.8), 50.0, v, 0.1);
  EXPECT_NEAR(relative_error(thrust, 0.5 * 1.225 * area * v * v * 0.8), 0.0, 1e-14);
}

TEST(AeroLoadsTest, ZeroCoefficientsGiveZeroLoads) {
  const RotorGeometry geom;
  const auto zero = constant_surface(0.0, 0.0);
  for (double v : {4.0, 11.4, 20.0}) {
    EXPECT_EQ(aero_torque(geom, zero, 60.0, v, 0.2), 0.0);
    EXPECT_EQ(aero_thrust(geom, zero, 60.0, v, 0.2), 0.0);
  }
}

TEST(AeroLoadsTest, ScalingAtFixedTipSpeedRatio) {
  const RotorGeometry geom;
  const auto& s = default_surface();
  const double t1 = aero_torque(geom, s, 40.0, 10.0, 0.1);
  const double t2 = aero_torque(geom, s, 80.0, 20.0, 0.1);
  // τa ∝ v³/ωg: doubling both scales torque by 4.
  EXPECT_NEAR(t2 / t1, 4.0, 1e-12);
  const double f1 = aero_thrust(geom, constant_surface(0.3, 1.0), 40.0, 10.0, 0.1);
  const double f2 = aero_thrust(geom, constant_surface(0.3, 1.0), 80.0, 20.0, 0.1);
  EXPECT_NEAR(f2 / f1, 4.0, 1e-12);
}

TEST(AeroLoadsTest, DomainErrors) {
  const RotorGeometry geom;
  const auto& s = default_surface();
  EXPECT_THROW(aero_torque(geom, s, 0.0, 10.0, 0.1), DomainError);
  EXPECT_THROW(aero_torque(geom, s, 60.0, -1.0, 0.1), DomainError);
  EXPECT_THROW(aero_thrust(geom, s, -5.0, 10.0, 0.1), DomainError);
}

TEST(PartialsTest, FlatSurfaceHasNoPitchSensitivity) {
  const RotorGeometry geom;
  const auto flat = constant_surface(0.4, 0.8);
  const auto d = partials(geom, flat, 50.0, 11.4, 0.2);
  EXPECT_EQ(d.dtau_dbeta, 0.0);
  EXPECT_EQ(d.dthrust_dbeta, 0.0);
  // ∂Fa/∂v = ρπR²v·Ct for a constant Ct.
  const double expected = 1.225 * geom.rotor_area() * 11.4 * 0.8;
  EXPECT_NEAR(relative_error(d.dthrust_dv, expected), 0.0, 1e-8);
}

TEST(PartialsTest, MarginErrorNearHullEdge) {
  const RotorGeometry geom;
  const auto& s = default_surface();
  EXPECT_THROW(partials(geom, s, 60.0, 15.0, 0.0), MarginError);
  EXPECT_THROW(partials(geom, s, 60.0, 15.0, s.beta_grid()[s.beta_grid().size() - 1]),
               MarginError);
  EXPECT_NO_THROW(partials(geom, s, 60.0, 15.0, 0.2));
}

// Closed-form derivatives of the surrogate, differentiated by hand.
struct SurrogateSlope {
  double cp, dcp_dlambda, dcp_dbeta;
};

SurrogateSlope surrogate_slope(const SurrogateParams& p, double lambda, double beta) {
  const auto& c = p.c;
  const double deg = 180.0 / std::numbers::pi;
  const double b = beta * deg;
  const double x = lambda + 0.08 * b;
  const double inv = 1.0 / x - 0.035 / (b * b * b + 1.0);
  const double decay = std::exp(-c[4] * inv);
  const double bracket = c[1] * inv - c[2] * b - c[3];
  const double d_inv = c[0] * decay * (c[1] - c[4] * bracket);
  const double dinv_dlambda = -1.0 / (x * x);
  const double dinv_db = -0.08 / (x * x) +
                         0.035 * 3.0 * b * b / std::pow(b * b * b + 1.0, 2);
  return {c[0] * bracket * decay + c[5] * lambda,
          d_inv * dinv_dlambda + c[5],
          (d_inv * dinv_db - c[0] * c[2] * decay) * deg};
}

TEST(PartialsTest, MatchAnalyticSurrogateDerivativesAtCellMidpoints) {
  const SurrogateParams params;
  const auto& s = default_surface();
  const RotorGeometry geom;
  const double half_rho_area = 0.5 * geom.air_density * geom.rotor_area();
  const double ng = geom.gearbox_ratio;
  const auto& lg = s.lambda_grid();
  const auto& bg = s.beta_grid();
  int checked = 0;
  for (double v : {13.0, 16.0, 20.0, 24.0}) {
    for (int i : {150, 210, 260}) {
      for (int j : {100, 170, 230}) {
        const double lambda = 0.5 * (lg[i] + lg[i + 1]);
        const double beta = 0.5 * (bg[j] + bg[j + 1]);
        const double omega = lambda * ng * v / geom.radius;
        const auto slope = surrogate_slope(params, lambda, beta);
        if (slope.cp <= 0.0) continue;
        const double cp_l = slope.dcp_dlambda;
        const double ct = params.ct0 * lambda / params.lambda_ref *
                          std::exp(-params.k_beta * beta);

        const double tau = half_rho_area * v * v * v * slope.cp * ng / omega;
        const double dtau_domega =
            half_rho_area * v * v * v * ng *
            (cp_l * geom.radius / (ng * v) / omega - slope.cp / (omega * omega));
        const double dtau_dv = half_rho_area * ng / omega *
                               (3.0 * v * v * slope.cp - v * v * lambda * cp_l);
        const double dtau_dbeta = half_rho_area * v * v * v * ng / omega * slope.dcp_dbeta;
        const double thrust = half_rho_area * v * v * ct;
        const double dthrust_dv = half_rho_area * v * ct;
        const double dthrust_domega = thrust / omega;
        const double dthrust_dbeta = -params.k_beta * thrust;

        const auto d = partials(geom, s, omega, v, beta);
        EXPECT_LT(relative_error(aero_torque(geom, s, omega, v, beta), tau), 1e-4);
        EXPECT_LT(relative_error(d.dtau_domega, dtau_domega), 1e-4) << v << " " << lambda;
        EXPECT_LT(relative_error(d.dtau_dv, dtau_dv), 1e-4) << v << " " << lambda;
        EXPECT_LT(relative_error(d.dtau_dbeta, dtau_dbeta), 1e-4) << v << " " << beta;
        EXPECT_LT(relative_error(d.dthrust_dv, dthrust_dv), 1e-4);
        EXPECT_LT(relative_error(d.dthrust_domega, dthrust_domega), 1e-4);
        EXPECT_LT(relative_error(d.dthrust_dbeta, dthrust_dbeta), 1e-4);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(PartialsTest, SignPatternAtTrimPoints) {
  for (const auto& op : testing::reference_ops()) {
    EXPECT_GT(op.partials.dtau_dv, 0.0) << op.v_bar;
    EXPECT_GT(op.partials.dthrust_dv, 0.0) << op.v_bar;
    EXPECT_LT(op.partials.dtau_dbeta, 0.0) << op.v_bar;
    EXPECT_LT(op.partials.dthrust_dbeta, 0.0) << op.v_bar;
  }
}

TEST(SurrogateTest, PeakNearDesignTipSpeedRatio) {
  const auto& s = default_surface();
  Eigen::Index row = 0, col = 0;
  const double peak = s.cp_table().maxCoeff(&row, &col);
  EXPECT_LE(peak, 0.593);
  EXPECT_EQ(col, 0);
  EXPECT_NEAR(s.lambda_grid()[row], 8.1, 0.1);
  EXPECT_NEAR(surrogate_cp({}, 8.1, 0.0), peak, 1e-3);
}

TEST(SurrogateTest, PowerCoefficientFallsWithPitchAlongTrims) {
  const SurrogateParams params;
  const RotorGeometry geom;
  for (const auto& op : testing::reference_ops()) {
    const double lambda = geom.tip_speed_ratio(op.omega_bar, op.v_bar);
    double previous = surrogate_cp(params, lambda, op.beta_bar - 0.05);
    for (double beta = op.beta_bar - 0.045; beta <= op.beta_bar + 0.05; beta += 0.005) {
      const double cp = surrogate_cp(params, lambda, beta);
      EXPECT_LT(cp, previous) << op.v_bar << " " << beta;
      previous = cp;
    }
  }
}

TEST(SurrogateTest, NodesSatisfyInvariants) {
  const auto& s = default_surface();
  EXPECT_GE(s.cp_table().minCoeff(), 0.0);
  EXPECT_LE(s.cp_table().maxCoeff(), 0.593);
  EXPECT_GE(s.ct_table().minCoeff(), 0.0);
  EXPECT_LE(s.ct_table().maxCoeff(), 1.6);
}

TEST(SurrogateTest, RejectsCoarseOrNarrowGrids) {
  SurrogateParams coarse;
  coarse.lambda_points = 19;
  EXPECT_THROW(build_surrogate_surface(coarse), ConfigError);
  SurrogateParams narrow;
  narrow.beta_max = 0.4;
  EXPECT_THROW(build_surrogate_surface(narrow), ConfigError);
}

TEST(SurfaceFileTest, RoundTripIsExact) {
  SurrogateParams params;
  params.lambda_points = 40;
  params.beta_points = 33;
  const auto original = build_surrogate_surface(params);
  std::stringstream text;
  write_surface(text, original);
  const auto copy = read_surface(text);
  EXPECT_TRUE(copy == original);
}

TEST(SurfaceFileTest, MalformedInputIsRejected) {
  std::stringstream text("lambda 2 1 2\nbeta 2 0 0.1\ncp\n0.1 0.2\n");
  EXPECT_THROW(read_surface(text), ConfigError);
}

}  // namespace
}  // namespace fowt
