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

#include "fowt/rotor_aero.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fowt/errors.hpp"

namespace fowt {

namespace {

void check_grid(const Eigen::VectorXd& grid, const char* name) {
  if (grid.size() < 2) {
    throw ConfigError(fmt::format("{} grid needs at least two samples", name));
  }
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ConfigError(fmt::format("{} grid must be strictly increasing", name));
    }
  }
}

// Index i of the cell [g[i], g[i+1]] holding x, plus the clamped coordinate.
struct Cell {
  Eigen::Index index;
  double weight;
  bool clamped;
};

Cell locate(const Eigen::VectorXd& grid, double x) {
  const Eigen::Index n = grid.size();
  if (x <= grid[0]) {
    return {0, 0.0, x < grid[0]};
  }
  if (x >= grid[n - 1]) {
    return {n - 2, 1.0, x > grid[n - 1]};
  }
  const auto* begin = grid.data();
  const auto* it = std::upper_bound(begin, begin + n, x);
  const Eigen::Index i = (it - begin) - 1;
  const double w = (x - grid[i]) / (grid[i + 1] - grid[i]);
  return {i, w, false};
}

}  // namespace

PerformanceSurface::PerformanceSurface(Eigen::VectorXd lambda_grid,
                                       Eigen::VectorXd beta_grid,
                                       Eigen::MatrixXd cp_table,
                                       Eigen::MatrixXd ct_table)
    : lambda_(std::move(lambda_grid)),
      beta_(std::move(beta_grid)),
      cp_(std::move(cp_table)),
      ct_(std::move(ct_table)) {
  check_grid(lambda_, "tip-speed-ratio");
  check_grid(beta_, "blade-pitch");
  for (const auto* table : {&cp_, &ct_}) {
    if (table->rows() != lambda_.size() || table->cols() != beta_.size()) {
      throw ConfigError(fmt::format(
          "coefficient table is {}x{}, grids are {}x{}", table->rows(),
          table->cols(), lambda_.size(), beta_.size()));
    }
    if (!table->allFinite()) {
      throw ConfigError("coefficient table holds non-finite entries");
    }
  }
  if (cp_.minCoeff() < 0.0 || cp_.maxCoeff() > 0.593) {
    throw ConfigError("power coefficient outside [0, 0.593]");
  }
  if (ct_.minCoeff() < 0.0) {
    throw ConfigError("negative thrust coefficient");
  }
}

Lookup PerformanceSurface::lookup(Coefficient which, double lambda,
                                  double beta) const {
  const Eigen::MatrixXd& t = which == Coefficient::power ? cp_ : ct_;
  const Cell a = locate(lambda_, lambda);
  const Cell b = locate(beta_, beta);
  const Eigen::Index i = a.index;
  const Eigen::Index j = b.index;
  const double wa = a.weight;
  const double wb = b.weight;
  const double value = (1.0 - wa) * ((1.0 - wb) * t(i, j) + wb * t(i, j + 1)) +
                       wa * ((1.0 - wb) * t(i + 1, j) + wb * t(i + 1, j + 1));
  return {value, a.clamped || b.clamped};
}

void RotorGeometry::validate() const {
  const bool positive = radius > 0 && air_density > 0 && gearbox_ratio > 0 &&
                        rotor_inertia > 0 && rated_gen_speed > 0 &&
                        rated_gen_torque > 0 && rated_wind > 0 &&
                        cutout_wind > 0 && beta_rate_max > 0;
  if (!positive) {
    throw ConfigError("rotor geometry quantities must be strictly positive");
  }
  if (!(beta_min < beta_max)) {
    throw ConfigError("rotor geometry requires beta_min < beta_max");
  }
  if (!(rated_wind < cutout_wind)) {
    throw ConfigError("rotor geometry requires rated_wind < cutout_wind");
  }
}

double RotorGeometry::rotor_area() const {
  return std::numbers::pi * radius * radius;
}

double RotorGeometry::tip_speed_ratio(double gen_speed, double wind) const {
  return gen_speed / gearbox_ratio * radius / wind;
}

namespace {

void check_domain(double gen_speed, double wind) {
  if (!(gen_speed > 0.0) || !(wind > 0.0)) {
    throw DomainError(fmt::format(
        "aerodynamics need positive generator speed and wind (got {}, {})",
        gen_speed, wind));
  }
}

}  // namespace

double aero_torque(const RotorGeometry& geom, const PerformanceSurface& surface,
                   double gen_speed, double wind, double beta) {
  check_domain(gen_speed, wind);
  const double lambda = geom.tip_speed_ratio(gen_speed, wind);
  const double cp = surface.lookup(Coefficient::power, lambda, beta).value;
  return 0.5 * geom.air_density * geom.rotor_area() * wind * wind * wind * cp *
         geom.gearbox_ratio / gen_speed;
}

double aero_thrust(const RotorGeometry& geom, const PerformanceSurface& surface,
                   double gen_speed, double wind, double beta) {
  check_domain(gen_speed, wind);
  const double lambda = geom.tip_speed_ratio(gen_speed, wind);
  const double ct = surface.lookup(Coefficient::thrust, lambda, beta).value;
  return 0.5 * geom.air_density * geom.rotor_area() * wind * wind * ct;
}

AeroPartials partials(const RotorGeometry& geom,
                      const PerformanceSurface& surface, double gen_speed,
                      double wind, double beta,
                      const FiniteDifferenceSteps& steps) {
  check_domain(gen_speed - steps.gen_speed, wind - steps.wind);

  // The extreme tip-speed ratios of the stencil.
  const double lambda_lo = geom.tip_speed_ratio(gen_speed - steps.gen_speed,
                                                wind + steps.wind);
  const double lambda_hi = geom.tip_speed_ratio(gen_speed + steps.gen_speed,
                                                wind - steps.wind);
  const auto& lg = surface.lambda_grid();
  const auto& bg = surface.beta_grid();
  if (lambda_lo < lg[0] || lambda_hi > lg[lg.size() - 1] ||
      beta - steps.beta < bg[0] || beta + steps.beta > bg[bg.size() - 1]) {
    throw MarginError(fmt::format(
        "partials at lambda={:.4f}, beta={:.4f} rad need a margin of one "
        "finite-difference step inside the surface hull",
        geom.tip_speed_ratio(gen_speed, wind), beta));
  }

  const auto torque = [&](double w, double v, double b) {
    return aero_torque(geom, surface, w, v, b);
  };
  const auto thrust = [&](double w, double v, double b) {
    return aero_thrust(geom, surface, w, v, b);
  };
  const double hw = steps.gen_speed;
  const double hv = steps.wind;
  const double hb = steps.beta;

  AeroPartials p;
  p.dtau_domega = (torque(gen_speed + hw, wind, beta) -
                   torque(gen_speed - hw, wind, beta)) / (2.0 * hw);
  p.dtau_dv = (torque(gen_speed, wind + hv, beta) -
               torque(gen_speed, wind - hv, beta)) / (2.0 * hv);
  p.dtau_dbeta = (torque(gen_speed, wind, beta + hb) -
                  torque(gen_speed, wind, beta - hb)) / (2.0 * hb);
  p.dthrust_domega = (thrust(gen_speed + hw, wind, beta) -
                      thrust(gen_speed - hw, wind, beta)) / (2.0 * hw);
  p.dthrust_dv = (thrust(gen_speed, wind + hv, beta) -
                  thrust(gen_speed, wind - hv, beta)) / (2.0 * hv);
  p.dthrust_dbeta = (thrust(gen_speed, wind, beta + hb) -
                     thrust(gen_speed, wind, beta - hb)) / (2.0 * hb);
  return p;
}

double surrogate_cp(const SurrogateParams& params, double lambda, double beta) {
  const auto& c = params.c;
  const double deg = beta * 180.0 / std::numbers::pi;
  const double inv_li =
      1.0 / (lambda + 0.08 * deg) - 0.035 / (deg * deg * deg + 1.0);
  const double cp = c[0] * (c[1] * inv_li - c[2] * deg - c[3]) *
                        std::exp(-c[4] * inv_li) +
                    c[5] * lambda;
  return std::clamp(cp, 0.0, params.cp_max);
}

double surrogate_ct(const SurrogateParams& params, double lambda, double beta) {
  const double ct =
      params.ct0 * (lambda / params.lambda_ref) * std::exp(-params.k_beta * beta);
  return std::clamp(ct, 0.0, params.ct_max);
}

PerformanceSurface build_surrogate_surface(const SurrogateParams& params) {
  if (params.lambda_points < 20 || params.beta_points < 20) {
    throw ConfigError("surrogate surface needs at least 20x20 grid nodes");
  }
  if (params.lambda_min > 2.0 || params.lambda_max < 15.0 ||
      params.beta_min > 0.0 || params.beta_max < 0.5) {
    throw ConfigError(
        "surrogate surface must cover lambda in [2, 15] and beta in [0, 0.5]");
  }
  if (params.cp_max > 0.593 || params.cp_max <= 0.0 || params.ct_max <= 0.0) {
    throw ConfigError("surrogate coefficient caps out of range");
  }
  const Eigen::VectorXd lambda = Eigen::VectorXd::LinSpaced(
      params.lambda_points, params.lambda_min, params.lambda_max);
  const Eigen::VectorXd beta = Eigen::VectorXd::LinSpaced(
      params.beta_points, params.beta_min, params.beta_max);
  Eigen::MatrixXd cp(lambda.size(), beta.size());
  Eigen::MatrixXd ct(lambda.size(), beta.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      cp(i, j) = surrogate_cp(params, lambda[i], beta[j]);
      ct(i, j) = surrogate_ct(params, lambda[i], beta[j]);
    }
  }
  return PerformanceSurface(lambda, beta, std::move(cp), std::move(ct));
}

}  // namespace fowt
