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

// Seeded sampling helpers. Nothing here touches global RNG state.

#pragma once

#include <cstdint>
#include <random>

#include "kraussim/numkernel.hpp"

namespace kraussim {

using Rng = std::mt19937_64;

/// Child seed for grid point `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

/// Matrix of i.i.d. standard complex normal entries.
template <int N>
CMatrix<N> ginibre(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix<N> a;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return a;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal pushed back into Q.
template <int N>
CMatrix<N> haar_unitary(Rng& rng) {
  const CMatrix<N> a = ginibre<N>(rng);
  Eigen::HouseholderQR<CMatrix<N>> qr(a);
  CMatrix<N> q = qr.householderQ();
  const CMatrix<N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int k = 0; k < N; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0) q.col(k) *= d / mag;
  }
  return q;
}

/// Full-rank random density matrix A A^dagger / tr (Hilbert-Schmidt measure).
template <int N>
CMatrix<N> random_density_matrix(Rng& rng) {
  const CMatrix<N> a = ginibre<N>(rng);
  CMatrix<N> rho = a * a.adjoint();
  rho /= rho.trace().real();
  return hermitize(rho);
}

/// Uniform point in the closed unit ball.
inline Vec3 random_bloch_vector(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec3 dir(normal(rng), normal(rng), normal(rng));
  const double n = dir.norm();
  if (n == 0.0) return Vec3::Zero();
  return dir / n * std::cbrt(unit(rng));
}

}  // namespace kraussim
