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


#ifndef FOWT_STATE_SPACE_HPP_
#define FOWT_STATE_SPACE_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fowt/errors.hpp"

namespace fowt {

// Largest real part among the eigenvalues of a square matrix.
template <typename Derived>
typename Derived::Scalar spectral_abscissa(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::EigenSolver<Matrix> solver(Matrix(a), false);
  if (solver.info() != Eigen::Success) {
    throw DegenerateError("eigenvalue iteration did not converge");
  }
  return solver.eigenvalues().real().maxCoeff();
}

// Orthonormal basis of the Krylov space span{v, Av, A²v, ...}, built by
// Arnoldi with two rounds of Gram-Schmidt. Columns stop once the next
// direction falls below `tol` relative to the scale of A and v.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> krylov_basis(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v, Scalar tol) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.rows();
  Matrix q(n, 0);
  const Scalar vnorm = v.norm();
  if (vnorm == Scalar(0)) return q;
  q.conservativeResize(n, 1);
  q.col(0) = v / vnorm;
  const Scalar scale = std::max(a.norm(), std::numeric_limits<Scalar>::min());
  for (Eigen::Index k = 1; k < n; ++k) {
    Vector w = a * q.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) w -= q * (q.transpose() * w);
    if (w.norm() <= tol * scale) break;
    q.conservativeResize(n, k + 1);
    q.col(k) = w.normalized();
  }
  return q;
}

// Controllable and observable part of a single-input single-output system,
// by orthogonal projection onto the Krylov spaces of (A, b) then (Aᵀ, cᵀ).
template <typename Scalar>
struct SisoRealization {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b;
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> c;
  Scalar d = 0;
};

template <typename DA, typename DB, typename DC>
SisoRealization<typename DA::Scalar> minimal_realization(
    const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
    const Eigen::MatrixBase<DC>& c, typename DA::Scalar d,
    typename DA::Scalar tol = 1e-10) {
  using Scalar = typename DA::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Matrix a0 = a;
  const Vector b0 = b;
  const Vector c0 = c.transpose();

  const Matrix qc = krylov_basis<Scalar>(a0, b0, tol);
  const Matrix a1 = qc.transpose() * a0 * qc;
  const Vector b1 = qc.transpose() * b0;
  const Vector c1 = qc.transpose() * c0;

  const Matrix qo = krylov_basis<Scalar>(Matrix(a1.transpose()), c1, tol);
  SisoRealization<Scalar> r;
  r.a = qo.transpose() * a1 * qo;
  r.b = qo.transpose() * b1;
  r.c = (qo.transpose() * c1).transpose();
  r.d = d;
  return r;
}

// Finite transmission zeros of the SISO system (A, b, c, d): the finite
// generalized eigenvalues of the pencil [[A, b], [c, d]] - s[[I, 0], [0, 0]]
// after reduction to a minimal realization.
template <typename DA, typename DB, typename DC>
std::vector<std::complex<typename DA::Scalar>> siso_zeros(
    const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
    const Eigen::MatrixBase<DC>& c, typename DA::Scalar d = 0) {
  using Scalar = typename DA::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto r = minimal_realization(a, b, c, d);
  const Eigen::Index n = r.a.rows();
  std::vector<std::complex<Scalar>> zeros;
  if (n == 0) return zeros;

  // Number of finite zeros is n minus the relative degree.
  Eigen::Index finite = n;
  if (d == Scalar(0)) {
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row = r.c;
    const Scalar anorm = r.a.norm();
    Eigen::Index degree = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
      const Scalar markov = row.dot(r.b);
      const Scalar bound = 1e-10 * r.c.norm() * r.b.norm() *
                           std::pow(anorm, Scalar(k - 1));
      if (std::abs(markov) > bound) {
        degree = k;
        break;
      }
      row = row * r.a;
    }
    if (degree == 0) {
      throw DegenerateError("transfer function is identically zero");
    }
    finite = n - degree;
  }
  if (finite == 0) return zeros;

  Matrix m = Matrix::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = r.a;
  m.topRightCorner(n, 1) = r.b;
  m.bottomLeftCorner(1, n) = r.c;
  m(n, n) = d;
  Matrix e = Matrix::Zero(n + 1, n + 1);
  e.topLeftCorner(n, n).setIdentity();

  Eigen::GeneralizedEigenSolver<Matrix> solver(m, e, false);
  if (solver.info() != Eigen::Success) {
    throw DegenerateError("system pencil QZ iteration did not converge");
  }
  const auto alphas = solver.alphas();
  const auto betas = solver.betas();
  std::vector<Eigen::Index> order(alphas.size());
  for (Eigen::Index i = 0; i < alphas.size(); ++i) order[i] = i;
  // Most finite first: largest |β| relative to |α|.
  const auto finiteness = [&](Eigen::Index i) {
    return std::abs(betas[i]) / (std::abs(alphas[i]) + std::abs(betas[i]));
  };
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
    return finiteness(x) > finiteness(y);
  });
  for (Eigen::Index k = 0; k < finite; ++k) {
    const Eigen::Index i = order[k];
    if (betas[i] == Scalar(0)) {
      throw DegenerateError("expected finite zero is at infinity");
    }
    zeros.push_back(alphas[i] / betas[i]);
  }
  return zeros;
}

// Popov-Belevitch-Hautus test: every eigenvalue with non-negative real part
// must be controllable.
template <typename DA, typename DB>
bool is_stabilizable(const Eigen::MatrixBase<DA>& a,
                     const Eigen::MatrixBase<DB>& b,
                     typename DA::Scalar tol = 1e-9) {
  using Scalar = typename DA::Scalar;
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix am = a;
  const Eigen::Index n = am.rows();
  Eigen::EigenSolver<Matrix> eig(am, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lambda = eig.eigenvalues()[i];
    if (lambda.real() < 0) continue;
    CMatrix pbh(n, n + b.cols());
    pbh.leftCols(n) = lambda * CMatrix::Identity(n, n) - am.template cast<Complex>();
    pbh.rightCols(b.cols()) = b.template cast<Complex>();
    Eigen::JacobiSVD<CMatrix> svd(pbh);
    const auto s = svd.singularValues();
    if (s[n - 1] <= tol * s[0]) return false;
  }
  return true;
}

}  // namespace fowt

#endif  // FOWT_STATE_SPACE_HPP_
