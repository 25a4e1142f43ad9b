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

// Table format:
//
//   lambda <n> <λ0> ... <λn-1>
//   beta <m> <β0> ... <βm-1>
//   cp
//   <n rows of m values>
//   ct
//   <n rows of m values>
//
// Values are written with 17 significant digits so a round trip is exact.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "fowt/errors.hpp"
#include "fowt/rotor_aero.hpp"

namespace fowt {

namespace {

void write_row(std::ostream& out, const double* values, Eigen::Index n) {
  for (Eigen::Index i = 0; i < n; ++i) {
    out << (i ? " " : "") << fmt::format("{:.17g}", values[i]);
  }
  out << '\n';
}

void write_table(std::ostream& out, const char* name, const Eigen::MatrixXd& t) {
  out << name << '\n';
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const Eigen::RowVectorXd row = t.row(i);
    write_row(out, row.data(), row.size());
  }
}

double read_number(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) {
    throw ConfigError(fmt::format("surface file truncated while reading {}", what));
  }
  try {
    std::size_t used = 0;
    const double x = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("surface file: bad number '{}' in {}", token, what));
  }
}

void expect_keyword(std::istream& in, const char* keyword) {
  std::string token;
  if (!(in >> token) || token != keyword) {
    throw ConfigError(fmt::format("surface file: expected '{}', found '{}'",
                                  keyword, token));
  }
}

Eigen::VectorXd read_grid(std::istream& in, const char* keyword) {
  expect_keyword(in, keyword);
  const double count = read_number(in, keyword);
  if (count < 2 || count != static_cast<double>(static_cast<long>(count))) {
    throw ConfigError(fmt::format("surface file: bad {} sample count", keyword));
  }
  Eigen::VectorXd grid(static_cast<Eigen::Index>(count));
  for (Eigen::Index i = 0; i < grid.size(); ++i) grid[i] = read_number(in, keyword);
  return grid;
}

Eigen::MatrixXd read_table(std::istream& in, const char* keyword,
                           Eigen::Index rows, Eigen::Index cols) {
  expect_keyword(in, keyword);
  Eigen::MatrixXd t(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) t(i, j) = read_number(in, keyword);
  }
  return t;
}

}  // namespace

void write_surface(std::ostream& out, const PerformanceSurface& surface) {
  const auto& lg = surface.lambda_grid();
  const auto& bg = surface.beta_grid();
  out << "lambda " << lg.size() << ' ';
  write_row(out, lg.data(), lg.size());
  out << "beta " << bg.size() << ' ';
  write_row(out, bg.data(), bg.size());
  write_table(out, "cp", surface.cp_table());
  write_table(out, "ct", surface.ct_table());
}

PerformanceSurface read_surface(std::istream& in) {
  Eigen::VectorXd lambda = read_grid(in, "lambda");
  Eigen::VectorXd beta = read_grid(in, "beta");
  Eigen::MatrixXd cp = read_table(in, "cp", lambda.size(), beta.size());
  Eigen::MatrixXd ct = read_table(in, "ct", lambda.size(), beta.size());
  std::string extra;
  if (in >> extra) {
    throw ConfigError(fmt::format("surface file: trailing content '{}'", extra));
  }
  return PerformanceSurface(std::move(lambda), std::move(beta), std::move(cp),
                            std::move(ct));
}

void save_surface(const std::string& path, const PerformanceSurface& surface) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  write_surface(out, surface);
  if (!out) throw ConfigError("failed writing " + path);
}

PerformanceSurface load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open surface file " + path);
  return read_surface(in);
}

}  // namespace fowt
