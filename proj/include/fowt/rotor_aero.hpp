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

#ifndef FOWT_ROTOR_AERO_HPP_
#define FOWT_ROTOR_AERO_HPP_

#include <array>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

namespace fowt {

enum class Coefficient { power, thrust };

// Result of a table lookup. `clamped` is set when the query fell outside the
// grid hull and was projected onto its nearest edge.
struct Lookup {
  double value = 0.0;
  bool clamped = false;
};

// Power and thrust coefficient tables over tip-speed ratio (rows) and blade
// pitch in radians (columns). Immutable once constructed.
class PerformanceSurface {
 public:
  PerformanceSurface(Eigen::VectorXd lambda_grid, Eigen::VectorXd beta_grid,
                     Eigen::MatrixXd cp_table, Eigen::MatrixXd ct_table);

  const Eigen::VectorXd& lambda_grid() const { return lambda_; }
  const Eigen::VectorXd& beta_grid() const { return beta_; }
  const Eigen::MatrixXd& cp_table() const { return cp_; }
  const Eigen::MatrixXd& ct_table() const { return ct_; }

  // Bilinear interpolation, exact at nodes.
  Lookup lookup(Coefficient which, double lambda, double beta) const;

  bool operator==(const PerformanceSurface&) const = default;

 private:
  Eigen::VectorXd lambda_;
  Eigen::VectorXd beta_;
  Eigen::MatrixXd cp_;
  Eigen::MatrixXd ct_;
};

inline Lookup interp_coefficient(const PerformanceSurface& surface,
                                 Coefficient which, double lambda,
                                 double beta) {
  return surface.lookup(which, lambda, beta);
}

struct RotorGeometry {
  double radius = 89.15;                // m
  double air_density = 1.225;           // kg/m^3
  double gearbox_ratio = 50.0;          // -
  double rotor_inertia = 1.6e8;         // kg m^2, low-speed shaft
  double rated_gen_speed = 60.2139;     // rad/s
  double rated_gen_torque = 166074.7;   // N m, high-speed shaft
  double rated_wind = 11.4;             // m/s
  double cutout_wind = 25.0;            // m/s
  double beta_min = 0.0;                // rad
  double beta_max = 0.7;                // rad
  double beta_rate_max = 0.087;         // rad/s

  // Throws ConfigError when an invariant is violated.
  void validate() const;

  double rotor_area() const;
  double tip_speed_ratio(double gen_speed, double wind) const;
};

// τa = ½ρπR²v³Cp(λ,β)·Ng/ωg, low-speed shaft torque.
double aero_torque(const RotorGeometry& geom, const PerformanceSurface& surface,
                   double gen_speed, double wind, double beta);

// Fa = ½ρπR²v²Ct(λ,β).
double aero_thrust(const RotorGeometry& geom, const PerformanceSurface& surface,
                   double gen_speed, double wind, double beta);

struct FiniteDifferenceSteps {
  double gen_speed = 1e-3;  // rad/s
  double wind = 1e-3;       // m/s
  double beta = 1e-4;       // rad
};

struct AeroPartials {
  double dtau_domega = 0.0;
  double dtau_dv = 0.0;
  double dtau_dbeta = 0.0;
  double dthrust_domega = 0.0;
  double dthrust_dv = 0.0;
  double dthrust_dbeta = 0.0;
};

// Central differences of torque and thrust. Throws MarginError when any
// stencil point would leave the tabulated hull.
AeroPartials partials(const RotorGeometry& geom,
                      const PerformanceSurface& surface, double gen_speed,
                      double wind, double beta,
                      const FiniteDifferenceSteps& steps = {});

// Empirical Cp(λ,β) = c1(c2/λi − c3β − c4)exp(−c5/λi) + c6λ with
// 1/λi = 1/(λ + 0.08β) − 0.035/(β³ + 1), and a thrust form
// Ct = ct0·(λ/λref)·exp(−kβ·β). The Cp constants are calibrated for pitch in
// degrees, so β is converted internally; every public argument is radians.
struct SurrogateParams {
  std::array<double, 6> c = {0.5176, 116.0, 0.4, 5.0, 21.0, 0.0068};
  double ct0 = 0.8;
  double lambda_ref = 8.0;
  double k_beta = 4.0;  // 1/rad
  double cp_max = 0.593;
  double ct_max = 1.6;

  double lambda_min = 2.0;
  double lambda_max = 15.0;
  int lambda_points = 651;
  double beta_min = 0.0;
  double beta_max = 0.8;
  int beta_points = 401;
};

double surrogate_cp(const SurrogateParams& params, double lambda, double beta);
double surrogate_ct(const SurrogateParams& params, double lambda, double beta);

// Tabulates the surrogate on a uniform grid. The grid must hold at least
// 20x20 nodes and cover λ ∈ [2, 15], β ∈ [0, 0.5] rad.
PerformanceSurface build_surrogate_surface(const SurrogateParams& params);

// Plain-text table format, see surface_io.cpp.
void write_surface(std::ostream& out, const PerformanceSurface& surface);
PerformanceSurface read_surface(std::istream& in);
void save_surface(const std::string& path, const PerformanceSurface& surface);
PerformanceSurface load_surface(const std::string& path);

}  // namespace fowt

#endif  // FOWT_ROTOR_AERO_HPP_
