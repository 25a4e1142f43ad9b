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
#include <complex>

#include <gtest/gtest.h>

#include "fowt/errors.hpp"
#include "fowt/linearization.hpp"
#include "fowt/state_space.hpp"
#include "support.hpp"

namespace fowt {
namespace {

using testing::default_plant;
using testing::default_surface;
using testing::reference_ops;

// Zeros of b2·s² + (a24·b4 − b2·a44)·s − b2·a43, the pitch-to-speed
// numerator of the four-state structure, expanded by hand.
std::vector<std::complex<double>> numerator_roots(const LinearModel& m) {
  const double b2 = m.b(kGenSpeed, kBladePitch);
  const double b4 = m.b(kPitchRate, kBladePitch);
  const double q = m.a(kGenSpeed, kPitchRate) * b4 - b2 * m.a(kPitchRate, kPitchRate);
  const double r = -b2 * m.a(kPitchRate, kPitch);
  const std::complex<double> disc = std::sqrt(std::complex<double>(q * q - 4.0 * b2 * r));
  return {(-q + disc) / (2.0 * b2), (-q - disc) / (2.0 * b2)};
}

bool same_roots(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b,
                double tol) {
  if (a.size() != b.size()) return false;
  const auto order = [](auto x, auto y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  };
  std::sort(a.begin(), a.end(), order);
  std::sort(b.begin(), b.end(), order);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol * std::max(1.0, std::abs(b[i]))) return false;
  }
  return true;
}

TEST(OperatingPointTest, TrimResidualAndPitchRange) {
  const RotorGeometry geom;
  const double target = geom.gearbox_ratio * geom.rated_gen_torque;
  double previous = -1.0;
  for (const auto& op : reference_ops()) {
    const double tau = aero_torque(geom, default_surface(), op.omega_bar, op.v_bar, op.beta_bar);
    EXPECT_LT(std::abs(tau - target) / target, 1e-10) << op.v_bar;
    EXPECT_GE(op.beta_bar, geom.beta_min);
    EXPECT_LE(op.beta_bar, geom.beta_max);
    EXPECT_GT(op.beta_bar, previous) << op.v_bar;
    previous = op.beta_bar;
    EXPECT_EQ(op.omega_bar, geom.rated_gen_speed);
    EXPECT_EQ(op.tau_g_bar, geom.rated_gen_torque);
  }
  const auto near_rated = find_operating_point(geom, default_surface(), {}, 11.5);
  EXPECT_LT(near_rated.beta_bar, 0.05);
}

TEST(OperatingPointTest, HeelHalvesWithDoubledRestoring) {
  PlatformParams stiff;
  stiff.restoring *= 2.0;
  for (double v : {13.0, 19.0}) {
    const auto soft_op = find_operating_point({}, default_surface(), {}, v);
    const auto stiff_op = find_operating_point({}, default_surface(), stiff, v);
    EXPECT_EQ(soft_op.beta_bar, stiff_op.beta_bar);
    EXPECT_NEAR(stiff_op.phi_bar, 0.5 * soft_op.phi_bar, 1e-15);
  }
}

TEST(OperatingPointTest, NoTrimBelowRatedOrPastCutout) {
  EXPECT_THROW(find_operating_point({}, default_surface(), {}, 8.0), DomainError);
  EXPECT_THROW(find_operating_point({}, default_surface(), {}, 26.0), DomainError);
  EXPECT_THROW(find_operating_point({}, testing::constant_surface(0.01, 0.5), {}, 15.0),
               NoTrimError);
}

TEST(OperatingPointTest, Grids) {
  const auto speeds = tuning_speeds(RotorGeometry{});
  ASSERT_EQ(speeds.size(), 28u);
  EXPECT_DOUBLE_EQ(speeds.front(), 11.5);
  EXPECT_DOUBLE_EQ(speeds.back(), 25.0);
  const auto refs = reference_speeds();
  ASSERT_EQ(refs.size(), 13u);
  EXPECT_EQ(refs.front(), 12.0);
  EXPECT_EQ(refs.back(), 24.0);
}

TEST(StateSpaceTest, MatchesNumericalJacobian) {
  const Plant plant = default_plant();
  for (const auto& op : reference_ops()) {
    const auto model = build_state_space(op, plant.geom, plant.platform);
    const auto jac = testing::numerical_jacobian(plant, op);
    std::string why;
    EXPECT_TRUE(testing::entrywise_close(model.a, jac.a, 1e-6, 0.0, &why))
        << op.v_bar << " A " << why;
    EXPECT_TRUE(testing::entrywise_close(model.b, jac.b, 1e-6, 0.0, &why))
        << op.v_bar << " B " << why;
  }
}

TEST(StateSpaceTest, StructureAndSparsity) {
  const RotorGeometry geom;
  const PlatformParams platform;
  for (const auto& op : reference_ops()) {
    const auto m = build_state_space(op, geom, platform);
    EXPECT_TRUE(m.a.col(kTheta).isZero(0.0));
    EXPECT_EQ(m.a(kTheta, kGenSpeed), 1.0);
    EXPECT_EQ(m.a(kPitch, kPitchRate), 1.0);
    EXPECT_EQ(m.a(kGenSpeed, kPitch), 0.0);
    EXPECT_EQ(m.b(kGenSpeed, kGenTorque), -50.0 * 50.0 / geom.rotor_inertia);
    EXPECT_EQ(m.b(kPitchRate, kPlatformMoment), 1.0 / platform.inertia);
    EXPECT_EQ((m.b.col(kGenTorque).array() != 0.0).count(), 1);
    EXPECT_EQ((m.b.col(kPlatformMoment).array() != 0.0).count(), 1);
    EXPECT_TRUE(m.b.row(kTheta).isZero(0.0));
    EXPECT_TRUE(m.b.row(kPitch).isZero(0.0));
    EXPECT_NEAR(m.a(kPitchRate, kPitchRate),
                -(platform.damping + 119.0 * 119.0 * op.partials.dthrust_dv) / platform.inertia,
                1e-15);
  }
}

TEST(StateSpaceTest, ZeroEigenvalueAndStabilizableRemainder) {
  for (const auto& op : reference_ops()) {
    const auto m = build_state_space(op, {}, {});
    EXPECT_NEAR(m.a.determinant(), 0.0, 1e-30);
    const Eigen::Matrix3d sub = m.a.bottomRightCorner<3, 3>();
    const Eigen::Matrix<double, 3, 4> inputs = m.b.bottomRows<3>();
    EXPECT_TRUE(is_stabilizable(sub, inputs)) << op.v_bar;
    const Eigen::Matrix<double, 3, 2> actuators = inputs.middleCols<2>(kBladePitch);
    EXPECT_TRUE(is_stabilizable(sub, actuators)) << op.v_bar;
  }
}

TEST(StateSpaceTest, ZeroHubHeightDecouples) {
  PlatformParams flat;
  flat.hub_height = 1e-300;  // validated as positive, numerically zero
  const auto op = find_operating_point({}, default_surface(), flat, 16.0);
  const auto m = build_state_space(op, {}, flat);
  EXPECT_NEAR(m.a(kGenSpeed, kPitchRate), 0.0, 1e-250);
  EXPECT_NEAR(m.a(kPitchRate, kGenSpeed), 0.0, 1e-250);
  const auto zeros = transmission_zeros(m, kBladePitch, kGenSpeed);
  EXPECT_TRUE(zeros.empty());
}

TEST(NmpzTest, PredicateAgreesWithTransmissionZeros) {
  int nmpz_points = 0;
  for (const auto& op : reference_ops()) {
    const auto m = build_state_space(op, {}, {});
    const auto zeros = transmission_zeros(m, kBladePitch, kGenSpeed);
    ASSERT_EQ(zeros.size(), 2u);
    EXPECT_TRUE(same_roots(zeros, numerator_roots(m), 1e-8)) << op.v_bar;
    EXPECT_EQ(has_rhp_zero(zeros), nmpz_predicate(op, {})) << op.v_bar;
    EXPECT_EQ(m.nmpz, nmpz_predicate(op, {}));
    nmpz_points += m.nmpz;
  }
  // The default platform is soft enough that some points are non-minimum phase.
  EXPECT_GT(nmpz_points, 0);
}

TEST(NmpzTest, HandSetFourStateNumerator) {
  LinearModel m;
  m.a << 0, 1, 0, 0,
         0, -0.3, 0, -2.5,
         0, 0, 0, 1,
         0, 0.01, -0.25, -0.4;
  m.b.col(kBladePitch) << 0, -4.0, 0, -0.02;
  // b2 = −4, b4 = −0.02: numerator −4s² + (0.05 − 1.6)s − 1.
  const std::vector<std::complex<double>> expected = {
      (1.55 + std::sqrt(std::complex<double>(1.55 * 1.55 - 16.0))) / -8.0,
      (1.55 - std::sqrt(std::complex<double>(1.55 * 1.55 - 16.0))) / -8.0};
  EXPECT_TRUE(same_roots(transmission_zeros(m, kBladePitch, kGenSpeed), expected, 1e-10));
  EXPECT_TRUE(same_roots(numerator_roots(m), expected, 1e-14));

  m.a(kPitchRate, kPitchRate) = 0.4;
  m.b(kPitchRate, kBladePitch) = 0.02;
  const auto flipped = transmission_zeros(m, kBladePitch, kGenSpeed);
  EXPECT_TRUE(same_roots(flipped, numerator_roots(m), 1e-10));
  EXPECT_TRUE(has_rhp_zero(flipped));
}

TEST(NmpzTest, LargeDampingOrNoThrustPitchSensitivityRemovesZeros) {
  PlatformParams damped;
  damped.damping = 1e13;
  for (const auto& op : reference_ops()) {
    EXPECT_FALSE(nmpz_predicate(op, damped));
    OperatingPoint flat = op;
    flat.partials.dthrust_dbeta = 0.0;
    EXPECT_FALSE(nmpz_predicate(flat, {}));
  }
  OperatingPoint degenerate = reference_ops().front();
  degenerate.partials.dtau_dbeta = 0.0;
  EXPECT_THROW(nmpz_predicate(degenerate, {}), DegenerateError);
}

TEST(NmpzTest, CompensatedPredicateMonotoneInTorqueFraction) {
  for (const auto& op : reference_ops()) {
    EXPECT_EQ(nmpz_compensated(op, {}, 0.0), nmpz_predicate(op, {}));
    EXPECT_FALSE(nmpz_compensated(op, {}, 1.0));
    bool cleared = false;
    for (int k = 0; k <= 100; ++k) {
      const bool rhp = nmpz_compensated(op, {}, k / 100.0);
      if (cleared) EXPECT_FALSE(rhp) << op.v_bar << " " << k;
      cleared = cleared || !rhp;
    }
  }
  EXPECT_THROW(nmpz_compensated(reference_ops().front(), {}, 1.5), ConfigError);
}

TEST(NmpzTest, InvariantUnderCommonLoadScaling) {
  for (double factor : {1e-3, 7.0, 1e4}) {
    for (const auto& op : reference_ops()) {
      OperatingPoint scaled = op;
      auto& d = scaled.partials;
      d.dtau_domega *= factor;
      d.dtau_dv *= factor;
      d.dtau_dbeta *= factor;
      d.dthrust_domega *= factor;
      d.dthrust_dv *= factor;
      d.dthrust_dbeta *= factor;
      PlatformParams platform;
      platform.inertia *= factor;
      platform.damping *= factor;
      platform.restoring *= factor;
      EXPECT_EQ(nmpz_predicate(scaled, platform), nmpz_predicate(op, {}));
      RotorGeometry geom;
      geom.rotor_inertia *= factor;
      const auto m0 = build_state_space(op, {}, {});
      const auto m1 = build_state_space(scaled, geom, platform);
      EXPECT_EQ(has_rhp_zero(transmission_zeros(m1, kBladePitch, kGenSpeed)),
                has_rhp_zero(transmission_zeros(m0, kBladePitch, kGenSpeed)));
    }
  }
}

TEST(CompensationTest, FullTorqueCompensationCancelsRateCoupling) {
  const RotorGeometry geom;
  const PlatformParams platform;
  for (const auto& op : reference_ops()) {
    const auto m = build_state_space(op, geom, platform);
    const double gamma = platform.hub_height / geom.gearbox_ratio * op.partials.dtau_dv;
    const auto c = with_compensation(m, 0.0, gamma);
    EXPECT_NEAR(c.a(kGenSpeed, kPitchRate), 0.0,
                1e-12 * std::abs(m.a(kGenSpeed, kPitchRate)));
    EXPECT_FALSE(has_rhp_zero(transmission_zeros(c, kBladePitch, kGenSpeed)));
  }
}

}  // namespace
}  // namespace fowt
