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


#ifndef FOWT_FILTERS_HPP_
#define FOWT_FILTERS_HPP_

#include <Eigen/Core>

namespace fowt {

// Discrete filters from the bilinear (trapezoidal) transform of a
// continuous state-space form. States keep their continuous meaning, so
// the corner may change between samples without output jumps.

// ω²/(s² + 2ζω·s + ω²), unit DC gain.
class SecondOrderLowPass {
 public:
  SecondOrderLowPass() = default;
  SecondOrderLowPass(double corner, double damping = 0.7071067811865476)
      : corner_(corner), damping_(damping) {}

  void reset(double value);
  double step(double input, double dt);
  double step(double input, double dt, double corner);
  double output() const { return x_[0]; }
  double corner() const { return corner_; }

  // Discrete state transition for a given sample time.
  static Eigen::Matrix2d transition(double corner, double damping, double dt);

 private:
  double corner_ = 1.0;
  double damping_ = 0.7071067811865476;
  Eigen::Vector2d x_ = Eigen::Vector2d::Zero();
  double last_input_ = 0.0;
};

// ω/(s + ω).
class FirstOrderLowPass {
 public:
  FirstOrderLowPass() = default;
  explicit FirstOrderLowPass(double corner) : corner_(corner) {}

  void reset(double value);
  double step(double input, double dt);
  double output() const { return x_; }

  static double pole(double corner, double dt);

 private:
  double corner_ = 1.0;
  double x_ = 0.0;
  double last_input_ = 0.0;
};

// s/(s + ω), zero DC gain.
class FirstOrderHighPass {
 public:
  FirstOrderHighPass() = default;
  explicit FirstOrderHighPass(double corner) : low_(corner) {}

  // Treats `value` as a steady input, so the output starts at zero.
  void reset(double value) { low_.reset(value); y_ = 0.0; }
  double step(double input, double dt) {
    y_ = input - low_.step(input, dt);
    return y_;
  }
  double output() const { return y_; }

 private:
  FirstOrderLowPass low_;
  double y_ = 0.0;
};

}  // namespace fowt

#endif  // FOWT_FILTERS_HPP_
