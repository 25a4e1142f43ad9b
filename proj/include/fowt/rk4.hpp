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


#ifndef FOWT_RK4_HPP_
#define FOWT_RK4_HPP_

namespace fowt {

// One classical fourth-order Runge-Kutta step of x' = f(t, x). Works with
// any vector type closed under addition and scalar multiplication.
template <typename Vector, typename F>
Vector rk4_step(const F& f, double t, const Vector& x, double h) {
  const Vector k1 = f(t, x);
  const Vector k2 = f(t + 0.5 * h, Vector(x + (0.5 * h) * k1));
  const Vector k3 = f(t + 0.5 * h, Vector(x + (0.5 * h) * k2));
  const Vector k4 = f(t + h, Vector(x + h * k3));
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace fowt

#endif  // FOWT_RK4_HPP_
