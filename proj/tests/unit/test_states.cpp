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

#include <gtest/gtest.h>

#include "../oracles.hpp"
#include "kraussim/random.hpp"
#include "kraussim/states.hpp"

using namespace kraussim;

namespace {

Mat2 diag2(double a, double b) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TwoQubitState local_rotate(const TwoQubitState& rho, const Mat2& u1, const Mat2& u2) {
  const Mat4 u = kron<2, 2>(u1, u2);
  return TwoQubitState(hermitize<4>(Mat4(u * rho.matrix() * u.adjoint())));
}

}  // namespace

TEST(DensityMatrix, ValidatesInvariants) {
  Mat2 bad_trace = Mat2::Identity();
  try {
    QubitState{bad_trace};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotNormalized);
  }
  Mat2 negative = diag2(1.5, -0.5);
  try {
    QubitState{negative};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPSD);
  }
  Mat2 skew;
  skew << 0.5, 0.3, 0.0, 0.5;
  try {
    QubitState{skew};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotHermitian);
  }
  // tolerated just below zero
  EXPECT_NO_THROW(QubitState(diag2(1.0 + 5e-10, -5e-10)));
}

TEST(Bloch, Examples) {
  EXPECT_LT((bloch_to_density({0, 0, 0}).matrix() - Mat2::Identity() / 2.0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((bloch_to_density({0, 0, 1}).matrix() - diag2(1, 0)).cwiseAbs().maxCoeff(), 1e-15);
  Mat2 plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  EXPECT_LT((bloch_to_density({1, 0, 0}).matrix() - plus).cwiseAbs().maxCoeff(), 1e-15);

  auto r = density_to_bloch(QubitState());
  EXPECT_NEAR(r.norm(), 0.0, 1e-15);
  r = density_to_bloch(QubitState(diag2(0, 1)));
  EXPECT_NEAR(r.z, -1.0, 1e-15);
  r = density_to_bloch(QubitState(Mat2(0.5 * (Mat2::Identity() + 0.3 * sigma_y()))));
  EXPECT_NEAR(r.x, 0.0, 1e-15);
  EXPECT_NEAR(r.y, 0.3, 1e-15);
  EXPECT_NEAR(r.z, 0.0, 1e-15);
}

TEST(Bloch, OutsideBall) {
  try {
    bloch_to_density({0.8, 0.8, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutsideBall);
  }
}

TEST(Bloch, RoundTripProperty) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = random_bloch_vector(rng);
    const auto back = density_to_bloch(bloch_to_density(BlochVector::from(v)));
    ASSERT_LT((back.vec() - v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Bell, StatesArePureAndMaximallyEntangled) {
  for (auto kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus}) {
    const auto rho = bell_state(kind);
    EXPECT_NEAR(purity(rho), 1.0, 1e-12);
    EXPECT_NEAR(concurrence(rho), 1.0, 1e-9);
    for (Mode m : {Mode::First, Mode::Second})
      EXPECT_LT((partial_trace(rho, m).matrix() - Mat2::Identity() / 2.0).cwiseAbs().maxCoeff(), 1e-15);
  }
  const Mat4 phi_minus = bell_state(BellKind::PhiMinus).matrix();
  EXPECT_NEAR(phi_minus(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(phi_minus(0, 3).real(), -0.5, 1e-15);
  EXPECT_NEAR(phi_minus(3, 3).real(), 0.5, 1e-15);
  const Mat4 psi_minus = bell_state(BellKind::PsiMinus).matrix();
  EXPECT_NEAR(psi_minus(1, 2).real(), -0.5, 1e-15);
  EXPECT_NEAR(psi_minus(1, 1).real(), 0.5, 1e-15);
}

TEST(Purity, Examples) {
  EXPECT_NEAR(purity(TwoQubitState()), 0.25, 1e-15);
  // tr[(vP + (1-v)I/4)^2] at v = 0.5: 0.25 + 0.25 * 0.75 = 0.4375
  EXPECT_NEAR(purity(werner_state(0.5)), 0.4375, 1e-14);
}

TEST(Fidelity, Examples) {
  Rng rng(3);
  const TwoQubitState rho(random_density_matrix<4>(rng));
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
  EXPECT_NEAR(fidelity(QubitState(diag2(1, 0)), QubitState(diag2(0, 1))), 0.0, 1e-12);
  const Eigen::Vector4cd phi = bell_vector(BellKind::PhiMinus);
  for (double v : {0.0, 0.25, 0.5, 0.82, 1.0}) {
    const double expected = std::sqrt(v + (1 - v) / 4);
    EXPECT_NEAR(fidelity(werner_state(v), bell_state(BellKind::PhiMinus)), expected, 1e-9);
    EXPECT_NEAR(oracle::fidelity_to_pure(werner_state(v).matrix(), phi), expected, 1e-12);
  }
}

TEST(Fidelity, SymmetricAndBounded) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const TwoQubitState a(random_density_matrix<4>(rng));
    const TwoQubitState b(random_density_matrix<4>(rng));
    const double fab = fidelity(a, b);
    ASSERT_NEAR(fab, fidelity(b, a), 1e-9);
    ASSERT_GE(fab, -1e-9);
    ASSERT_LE(fab, 1.0 + 1e-9);
    ASSERT_LE(purity(a), 1.0 + 1e-9);
    ASSERT_GE(purity(a), 0.25 - 1e-9);
  }
}

TEST(Concurrence, Examples) {
  EXPECT_NEAR(concurrence(TwoQubitState()), 0.0, 1e-12);
  EXPECT_NEAR(concurrence(werner_state(1.0 / 3.0)), 0.0, 1e-8);
  const QubitState h(diag2(1, 0));
  const QubitState v(diag2(0, 1));
  EXPECT_NEAR(concurrence(product_state(h, v)), 0.0, 1e-9);
}

TEST(Concurrence, WernerGridAgainstOracle) {
  for (int i = 0; i <= 100; ++i) {
    const double v = i / 100.0;
    const auto rho = werner_state(v);
    const double expected = oracle::werner_concurrence(v);
    ASSERT_NEAR(oracle::concurrence(rho.matrix()), expected, 1e-10) << "v=" << v;
    ASSERT_NEAR(concurrence(rho), expected, 1e-10) << "v=" << v;
  }
}

TEST(Concurrence, RandomStatesAgainstOracle) {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const TwoQubitState rho(random_density_matrix<4>(rng));
    ASSERT_NEAR(concurrence(rho), oracle::concurrence(rho.matrix()), 1e-8);
  }
}

TEST(LocalUnitaryInvariance, FigureOfMeritsUnchanged) {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    Mat4 m = random_density_matrix<4>(rng);
    // make it entangled sometimes
    m = 0.5 * m + 0.5 * bell_state(BellKind::PhiMinus).matrix();
    const TwoQubitState rho(hermitize<4>(m));
    const TwoQubitState sigma(random_density_matrix<4>(rng));
    const Mat2 u1 = haar_unitary<2>(rng);
    const Mat2 u2 = haar_unitary<2>(rng);
    const auto rho_u = local_rotate(rho, u1, u2);
    const auto sigma_u = local_rotate(sigma, u1, u2);
    ASSERT_NEAR(concurrence(rho_u), concurrence(rho), 1e-9);
    ASSERT_NEAR(purity(rho_u), purity(rho), 1e-9);
    ASSERT_NEAR(fidelity(rho_u, sigma_u), fidelity(rho, sigma), 1e-9);
  }
}

TEST(PartialTrace, ProductAndStationaryState) {
  const QubitState h(diag2(1, 0));
  const QubitState v(diag2(0, 1));
  const auto hv = product_state(h, v);
  EXPECT_LT((partial_trace(hv, Mode::First).matrix() - h.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((partial_trace(hv, Mode::Second).matrix() - v.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  for (double g : {0.0, 0.2, 0.4, 1.0}) {
    const auto stationary = product_state(QubitState(diag2(g, 1 - g)), QubitState());
    EXPECT_LT((partial_trace(stationary, Mode::First).matrix() - diag2(g, 1 - g)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Werner, EndpointsAndRange) {
  EXPECT_LT((werner_state(1.0).matrix() - bell_state(BellKind::PhiMinus).matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((werner_state(0.0).matrix() - Mat4::Identity() / 4.0).cwiseAbs().maxCoeff(), 1e-15);
  try {
    werner_state(1.2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfRange);
  }
}

TEST(ProjectToPhysical, ClipsAndRenormalizes) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 0.7;
  m(1, 1) = 0.4;
  m(2, 2) = -0.1;
  const auto p = project_to_physical<4>(m);
  EXPECT_NEAR(p.min_eigenvalue, -0.1, 1e-15);
  EXPECT_NEAR(p.state(0, 0).real(), 0.7 / 1.1, 1e-14);
  EXPECT_NEAR(p.state(2, 2).real(), 0.0, 1e-15);
}
