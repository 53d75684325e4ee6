// Copyright 2026 The kraussim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense kernels (2x2 .. 4x4) shared by every other header.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "kraussim/error.hpp"

namespace kraussim {

using Complex = std::complex<double>;

template <int N>
using CMatrix = Eigen::Matrix<Complex, N, N>;
template <int N>
using CVector = Eigen::Matrix<Complex, N, 1>;
template <int N>
using RVector = Eigen::Matrix<double, N, 1>;

using Mat2 = CMatrix<2>;
using Mat4 = CMatrix<4>;
using RealMatrix3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kDefaultTol = 1e-9;

/// max |H - H^dagger| over entries.
template <int N>
double hermitian_defect(const CMatrix<N>& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

template <int N>
double max_abs(const CMatrix<N>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <int N>
CMatrix<N> hermitize(const CMatrix<N>& m) {
  return (m + m.adjoint()) * 0.5;
}

/// Kronecker product of two square operators.
template <int A, int B>
CMatrix<A * B> kron(const CMatrix<A>& a, const CMatrix<B>& b) {
  CMatrix<A * B> out;
  for (int i = 0; i < A; ++i)
    for (int j = 0; j < A; ++j) out.template block<B, B>(i * B, j * B) = a(i, j) * b;
  return out;
}

template <int N>
struct HermitianEig {
  RVector<N> values;     // descending
  CMatrix<N> vectors;    // column k pairs with values(k)
};

/// Eigendecomposition of a Hermitian matrix with eigenvalues in descending
/// order. Degenerate eigenspaces come back with an arbitrary orthonormal basis.
template <int N>
HermitianEig<N> hermitian_eig(const CMatrix<N>& h, double tol = kDefaultTol) {
  const double defect = hermitian_defect(h);
  if (!(defect <= tol)) throw Error(Errc::NotHermitian, "max |H - H^dagger| exceeds tolerance", defect);
  Eigen::SelfAdjointEigenSolver<CMatrix<N>> solver(hermitize(h));
  HermitianEig<N> out;
  // Eigen sorts ascending.
  for (int k = 0; k < N; ++k) {
    out.values(k) = solver.eigenvalues()(N - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(N - 1 - k);
  }
  return out;
}

/// Principal square root of a PSD matrix. Eigenvalues in [-tol, 0) are
/// treated as zero.
template <int N>
CMatrix<N> psd_sqrt(const CMatrix<N>& m, double tol = kDefaultTol) {
  const auto eig = hermitian_eig(m, tol);
  const double lowest = eig.values(N - 1);
  if (lowest < -tol) throw Error(Errc::NotPSD, "matrix has a negative eigenvalue", lowest);
  RVector<N> roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.template cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

struct Svd3 {
  RealMatrix3 o1;
  Vec3 s;  // nonnegative, descending
  RealMatrix3 o2;
};

/// T = o1 * diag(s) * o2^T. Either factor may be a reflection.
inline Svd3 svd3(const RealMatrix3& t) {
  Eigen::JacobiSVD<RealMatrix3> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace kraussim
