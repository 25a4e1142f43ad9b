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

#include "fowt/filters.hpp"

#include <Eigen/Dense>

namespace fowt {

namespace {

Eigen::Matrix2d continuous(double w, double z) {
  Eigen::Matrix2d a;
  a << 0.0, 1.0, -w * w, -2.0 * z * w;
  return a;
}

}  // namespace

void SecondOrderLowPass::reset(double value) {
  x_ << value, 0.0;
  last_input_ = value;
}

Eigen::Matrix2d SecondOrderLowPass::transition(double corner, double damping,
                                               double dt) {
  const Eigen::Matrix2d half = 0.5 * dt * continuous(corner, damping);
  const Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
  return (eye - half).inverse() * (eye + half);
}

double SecondOrderLowPass::step(double input, double dt) {
  return step(input, dt, corner_);
}

double SecondOrderLowPass::step(double input, double dt, double corner) {
  corner_ = corner;
  const Eigen::Matrix2d half = 0.5 * dt * continuous(corner, damping_);
  const Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
  const Eigen::Vector2d b(0.0, corner * corner);
  const Eigen::Vector2d rhs =
      (eye + half) * x_ + 0.5 * dt * b * (input + last_input_);
  x_ = (eye - half).inverse() * rhs;
  last_input_ = input;
  return x_[0];
}

void FirstOrderLowPass::reset(double value) {
  x_ = value;
  last_input_ = value;
}

double FirstOrderLowPass::pole(double corner, double dt) {
  const double h = 0.5 * dt * corner;
  return (1.0 - h) / (1.0 + h);
}

double FirstOrderLowPass::step(double input, double dt) {
  const double h = 0.5 * dt * corner_;
  x_ = ((1.0 - h) * x_ + h * (input + last_input_)) / (1.0 + h);
  last_input_ = input;
  return x_;
}

}  // namespace fowt
