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

// One- and two-qubit density matrices and the figures of merit used to
// compare them. Basis convention: |0> = |H>, |1> = |V>; two-qubit states
// are ordered mode 1 (x) mode 2.

#pragma once

#include <array>
#include <string_view>

#include "kraussim/numkernel.hpp"

namespace kraussim {

/// Pauli matrices; index 0 is the identity, 1..3 are x, y, z.
inline const Mat2& pauli(int k) {
  static const std::array<Mat2, 4> ops = [] {
    const Complex i(0.0, 1.0);
    std::array<Mat2, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -i, i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return ops.at(static_cast<std::size_t>(k));
}

inline const Mat2& sigma_x() { return pauli(1); }
inline const Mat2& sigma_y() { return pauli(2); }
inline const Mat2& sigma_z() { return pauli(3); }

/// Hermitian, unit-trace, positive semidefinite matrix of dimension 2 or 4.
/// Construction validates; eigenvalues down to -tol are tolerated.
template <int N>
class DensityMatrix {
  static_assert(N == 2 || N == 4, "one or two qubits");

 public:
  using Matrix = CMatrix<N>;
  static constexpr int dim = N;

  /// Maximally mixed state.
  DensityMatrix() : m_(Matrix::Identity() / static_cast<double>(N)) {}

  explicit DensityMatrix(const Matrix& m, double tol = kDefaultTol) : m_(m) {
    const double herm = hermitian_defect(m);
    if (!(herm <= tol)) throw Error(Errc::NotHermitian, "density matrix is not Hermitian", herm);
    const double tr_defect = std::abs(m.trace() - Complex(1.0));
    if (!(tr_defect <= tol)) throw Error(Errc::NotNormalized, "density matrix trace differs from 1", tr_defect);
    const double lowest = hermitian_eig(m, tol).values(N - 1);
    if (lowest < -tol) throw Error(Errc::NotPSD, "density matrix has a negative eigenvalue", lowest);
    m_ = hermitize(m);
  }

  const Matrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  Matrix m_;
};

using QubitState = DensityMatrix<2>;
using TwoQubitState = DensityMatrix<4>;

template <int N>
struct PhysicalProjection {
  DensityMatrix<N> state;
  double min_eigenvalue;  // before clipping
};

/// Hermitize, clip negative eigenvalues to zero and renormalize the trace.
/// Used on tomographic estimates that may leave the physical set.
template <int N>
PhysicalProjection<N> project_to_physical(const CMatrix<N>& m) {
  const auto eig = hermitian_eig(hermitize(m), std::numeric_limits<double>::infinity());
  RVector<N> clipped = eig.values.cwiseMax(0.0);
  const double total = clipped.sum();
  if (!(total > 0.0)) throw Error(Errc::NotPSD, "estimate has no positive eigenvalue", eig.values(0));
  clipped /= total;
  const CMatrix<N> rho = eig.vectors * clipped.template cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return {DensityMatrix<N>(hermitize(rho)), eig.values(N - 1)};
}

template <int N>
DensityMatrix<N> pure_state(const CVector<N>& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw Error(Errc::OutOfRange, "zero state vector");
  const CVector<N> u = psi / n;
  return DensityMatrix<N>(u * u.adjoint());
}

inline TwoQubitState product_state(const QubitState& a, const QubitState& b) {
  return TwoQubitState(kron<2, 2>(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// Bloch representation

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  static BlochVector from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
  double norm() const { return vec().norm(); }
};

/// rho = (I + r . sigma) / 2
inline QubitState bloch_to_density(const BlochVector& r) {
  const double n = r.norm();
  if (n > 1.0 + kDefaultTol) throw Error(Errc::OutsideBall, "Bloch vector longer than 1", n);
  const Mat2 m = 0.5 * (pauli(0) + r.x * pauli(1) + r.y * pauli(2) + r.z * pauli(3));
  return QubitState(m);
}

/// r_k = tr(rho sigma_k)
inline BlochVector density_to_bloch(const QubitState& rho) {
  const Mat2& m = rho.matrix();
  return {(m * pauli(1)).trace().real(), (m * pauli(2)).trace().real(), (m * pauli(3)).trace().real()};
}

// ---------------------------------------------------------------------------
// Bell and Werner states

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline std::string_view bell_name(BellKind k) {
  switch (k) {
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
  }
  return "?";
}

inline CVector<4> bell_vector(BellKind kind) {
  const double h = 1.0 / std::sqrt(2.0);
  CVector<4> v = CVector<4>::Zero();
  switch (kind) {
    case BellKind::PhiPlus: v(0) = h; v(3) = h; break;
    case BellKind::PhiMinus: v(0) = h; v(3) = -h; break;
    case BellKind::PsiPlus: v(1) = h; v(2) = h; break;
    case BellKind::PsiMinus: v(1) = h; v(2) = -h; break;
  }
  return v;
}

inline TwoQubitState bell_state(BellKind kind) { return pure_state<4>(bell_vector(kind)); }

/// v |Bell><Bell| + (1 - v) I/4
inline TwoQubitState werner_state(double v, BellKind kind = BellKind::PhiMinus) {
  detail::require_range(v, 0.0, 1.0, "werner visibility");
  const CVector<4> b = bell_vector(kind);
  return TwoQubitState(v * (b * b.adjoint()) + (1.0 - v) * Mat4::Identity() / 4.0);
}

// ---------------------------------------------------------------------------
// Figures of merit

template <int N>
double purity(const DensityMatrix<N>& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

/// Root (Uhlmann) fidelity tr sqrt(sqrt(r1) r2 sqrt(r1)); equals 1 iff the
/// states coincide. Square it for the squared-fidelity convention. Rounding
/// in the near-zero eigenvalues can push the sum a few 1e-9 above 1; the
/// result is clamped.
template <int N>
double fidelity(const DensityMatrix<N>& rho1, const DensityMatrix<N>& rho2) {
  const CMatrix<N> root = psd_sqrt(rho1.matrix());
  const CMatrix<N> inner = hermitize<N>(root * rho2.matrix() * root);
  const auto eig = hermitian_eig(inner, std::numeric_limits<double>::infinity());
  double f = 0.0;
  for (int k = 0; k < N; ++k) f += std::sqrt(std::max(0.0, eig.values(k)));
  return std::min(f, 1.0);
}

/// Spin-flipped state (sy (x) sy) rho* (sy (x) sy).
inline Mat4 spin_flip(const Mat4& rho) {
  const Mat4 yy = kron<2, 2>(sigma_y(), sigma_y());
  return yy * rho.conjugate() * yy;
}

/// Wootters concurrence. The spectrum of rho * spin_flip(rho) is taken from
/// the Hermitian similar matrix sqrt(rho) spin_flip(rho) sqrt(rho).
inline double concurrence(const TwoQubitState& rho) {
  const Mat4 root = psd_sqrt(rho.matrix());
  const Mat4 r = hermitize<4>(root * spin_flip(rho.matrix()) * root);
  const auto eig = hermitian_eig(r, std::numeric_limits<double>::infinity());
  RVector<4> mu;
  for (int k = 0; k < 4; ++k) mu(k) = std::sqrt(std::max(0.0, eig.values(k)));
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

enum class Mode { First = 1, Second = 2 };

/// Reduced state of the kept mode.
inline QubitState partial_trace(const TwoQubitState& rho, Mode keep) {
  const Mat4& m = rho.matrix();
  Mat2 out = Mat2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        out(i, j) += keep == Mode::First ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
  return QubitState(out);
}

}  // namespace kraussim
