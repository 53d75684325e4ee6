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

#include "kraussim/decomposition.hpp"
#include "kraussim/optics.hpp"

using namespace kraussim;

namespace {

using E = OpticalElement;

Mat4 projector(const CVector<4>& v) { return v * v.adjoint(); }

CVector<4> basis_ket(int i) {
  CVector<4> v = CVector<4>::Zero();
  v(i) = 1.0;
  return v;
}

/// Maps rho -> A rho A^dagger agree on every matrix unit.
bool same_map(const Mat2& a, const Mat2& b, double tol) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat2 e = Mat2::Zero();
      e(i, j) = 1.0;
      if ((a * e * a.adjoint() - b * e * b.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    }
  return true;
}

}  // namespace

TEST(Element, Examples) {
  EXPECT_LT((element_matrix(E::hwp_deg(0)) - sigma_z()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((element_matrix(E::hwp_deg(45)) - sigma_x()).cwiseAbs().maxCoeff(), 1e-15);
  Mat2 hh = Mat2::Zero();
  hh(0, 0) = 1.0;
  EXPECT_LT((element_matrix(E::polarizer_deg(0)) - hh).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(element_matrix(E::hwp_deg(17)).determinant().real(), -1.0, 1e-12);
  // QWP(0) = diag(1, i)
  const Mat2 q = element_matrix(E::qwp_deg(0));
  EXPECT_NEAR(std::abs(q(1, 1) - Complex(0, 1)), 0.0, 1e-15);
}

TEST(Element, UnitarityAndIdempotenceProperty) {
  Rng rng(3);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const double a = angle(rng);
    for (auto kind : {ElementKind::HWP, ElementKind::QWP}) {
      const Mat2 u = element_matrix({kind, a});
      ASSERT_LT((u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    }
    const Mat2 p = element_matrix({ElementKind::Polarizer, a});
    ASSERT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_NEAR(p.trace().real(), 1.0, 1e-12);
  }
}

TEST(Compile, Examples) {
  const auto sy = compile_kraus(sigma_x() * sigma_z());
  ASSERT_EQ(sy.size(), 2u);
  EXPECT_EQ(sy[0].kind, ElementKind::HWP);
  EXPECT_NEAR(rad_to_deg(sy[0].angle), 0.0, 1e-12);
  EXPECT_NEAR(rad_to_deg(sy[1].angle), 45.0, 1e-12);

  const auto hv = compile_kraus(*named_operator("proj_01"));
  ASSERT_EQ(hv.size(), 2u);
  EXPECT_EQ(hv[0].kind, ElementKind::HWP);
  EXPECT_NEAR(rad_to_deg(hv[0].angle), 45.0, 1e-12);
  EXPECT_EQ(hv[1].kind, ElementKind::Polarizer);
  EXPECT_NEAR(hv[1].angle, 0.0, 1e-15);

  EXPECT_TRUE(compile_kraus(Mat2::Identity()).empty());
  EXPECT_TRUE(compile_kraus(0.3 * Mat2::Identity()).empty());
  EXPECT_EQ(compile_kraus(Complex(0, 2) * sigma_y()).size(), 2u);
}

TEST(Compile, NotCompilable) {
  Mat2 h;
  h << 1, 1, 1, -1;
  try {
    compile_kraus(h / std::sqrt(2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCompilable);
  }
  EXPECT_THROW(compile_kraus(Mat2::Zero()), Error);
}

TEST(Compile, EveryBenchShapeRoundTrips) {
  Rng rng(5);
  std::uniform_real_distribution<double> u(0.1, 3.0), ph(0, 2 * kPi);
  for (const char* name : {"identity", "sigma_x", "sigma_y", "sigma_z", "proj_00", "proj_11", "proj_01", "proj_10"}) {
    const Mat2 m = *named_operator(name);
    for (int i = 0; i < 20; ++i) {
      const Mat2 scaled = u(rng) * std::polar(1.0, ph(rng)) * m;
      const Mat2 composed = compose(compile_kraus(scaled));
      ASSERT_TRUE(proportional_up_to_phase(scaled, composed, 1e-12).has_value()) << name;
      ASSERT_TRUE(same_map(m, composed, 1e-12)) << name;
      ASSERT_LE(compile_kraus(scaled).size(), 3u);
    }
  }
}

TEST(ApplySequence, Examples) {
  const auto phi_minus = bell_state(BellKind::PhiMinus);
  auto out = apply_sequence({E::hwp_deg(45)}, phi_minus);
  EXPECT_NEAR(out.transmissivity, 1.0, 1e-15);
  EXPECT_LT((out.state.matrix() - bell_state(BellKind::PsiMinus).matrix()).cwiseAbs().maxCoeff(), 1e-12);

  out = apply_sequence({E::polarizer_deg(0)}, phi_minus);
  EXPECT_NEAR(out.transmissivity, 0.5, 1e-15);
  EXPECT_LT((out.state.matrix() - projector(basis_ket(0))).cwiseAbs().maxCoeff(), 1e-12);

  try {
    apply_sequence({E::polarizer_deg(0)}, pure_state<4>(basis_ket(3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FullyBlocked);
  }
}

TEST(ApplySequence, BenchOutputStates) {
  const auto phi_minus = bell_state(BellKind::PhiMinus);
  struct Row {
    const char* op;
    Mat4 expected;
  };
  const std::vector<Row> rows = {
      {"identity", bell_state(BellKind::PhiMinus).matrix()},
      {"sigma_x", bell_state(BellKind::PsiMinus).matrix()},
      {"sigma_y", bell_state(BellKind::PsiPlus).matrix()},
      {"sigma_z", bell_state(BellKind::PhiPlus).matrix()},
      {"proj_00", projector(basis_ket(0))},  // |H>|H>
      {"proj_11", projector(basis_ket(3))},  // |V>|V>
      {"proj_01", projector(basis_ket(1))},  // |H>|V>
      {"proj_10", projector(basis_ket(2))},  // |V>|H>
  };
  for (const auto& row : rows) {
    const auto out = apply_sequence(compile_kraus(*named_operator(row.op)), phi_minus);
    EXPECT_LT((out.state.matrix() - row.expected).cwiseAbs().maxCoeff(), 1e-12) << row.op;
    EXPECT_GE(out.transmissivity, 0.0);
    EXPECT_LE(out.transmissivity, 1.0);
  }
}

TEST(ApplySequence, TransmissivityBounds) {
  Rng rng(7);
  std::uniform_real_distribution<double> angle(0, kPi);
  for (int i = 0; i < 300; ++i) {
    const TwoQubitState rho(random_density_matrix<4>(rng));
    const ElementSequence unitary{{ElementKind::HWP, angle(rng)}, {ElementKind::QWP, angle(rng)}};
    ASSERT_NEAR(apply_sequence(unitary, rho).transmissivity, 1.0, 1e-12);
    const ElementSequence lossy{{ElementKind::QWP, angle(rng)}, {ElementKind::Polarizer, angle(rng)}};
    const double t = apply_sequence(lossy, rho).transmissivity;
    ASSERT_GE(t, 0.0);
    ASSERT_LE(t, 1.0);
  }
}
