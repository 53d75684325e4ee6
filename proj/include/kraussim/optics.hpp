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

// Jones-calculus models of the mode-1 bench (half-wave plates, quarter-wave
// plates, polarizers) and the compiler from Kraus operators to element
// sequences.
//
// Conventions: angles are measured from horizontal, in radians.
//   HWP(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
//   QWP(t) = R(t) diag(1, i) R(-t)
//   Pol(t) = |t><t|,  |t> = (cos t, sin t)

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "kraussim/states.hpp"

namespace kraussim {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

enum class ElementKind { HWP, QWP, Polarizer };

struct OpticalElement {
  ElementKind kind = ElementKind::HWP;
  double angle = 0.0;

  static OpticalElement hwp_deg(double deg) { return {ElementKind::HWP, deg_to_rad(deg)}; }
  static OpticalElement qwp_deg(double deg) { return {ElementKind::QWP, deg_to_rad(deg)}; }
  static OpticalElement polarizer_deg(double deg) { return {ElementKind::Polarizer, deg_to_rad(deg)}; }
};

/// Elements in the order the photon meets them.
using ElementSequence = std::vector<OpticalElement>;

inline Mat2 rotation(double angle) {
  Mat2 r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

inline Mat2 element_matrix(const OpticalElement& e) {
  Mat2 m;
  switch (e.kind) {
    case ElementKind::HWP: {
      const double c = std::cos(2.0 * e.angle);
      const double s = std::sin(2.0 * e.angle);
      m << c, s, s, -c;
      break;
    }
    case ElementKind::QWP: {
      Mat2 retarder;
      retarder << 1, 0, 0, Complex(0.0, 1.0);
      m = rotation(e.angle) * retarder * rotation(-e.angle);
      break;
    }
    case ElementKind::Polarizer: {
      CVector<2> axis(std::cos(e.angle), std::sin(e.angle));
      m = axis * axis.adjoint();
      break;
    }
  }
  return m;
}

/// Net Jones operator; later elements multiply from the left.
inline Mat2 compose(const ElementSequence& seq) {
  Mat2 m = Mat2::Identity();
  for (const auto& e : seq) m = element_matrix(e) * m;
  return m;
}

/// Positive s such that a = s e^{i phi} b, if one exists.
inline std::optional<double> proportional_up_to_phase(const Mat2& a, const Mat2& b, double tol = 1e-9) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) return std::nullopt;
  const Complex overlap = (b.adjoint() * a).trace();
  if (std::abs(overlap) == 0.0) return std::nullopt;
  const Complex phase = overlap / std::abs(overlap);
  const double s = na / nb;
  if ((a - s * phase * b).norm() > tol * na) return std::nullopt;
  return s;
}

struct TableEntry {
  std::string_view name;
  Mat2 op;
  ElementSequence sequence;
};

/// Operators realizable on mode 1 with at most two plates and a polarizer.
inline const std::vector<TableEntry>& bench_table() {
  static const std::vector<TableEntry> table = [] {
    using E = OpticalElement;
    std::vector<TableEntry> t;
    t.push_back({"identity", pauli(0), {}});
    t.push_back({"sigma_x", pauli(1), {E::hwp_deg(45)}});
    // sx sz = -i sy
    t.push_back({"sigma_y", pauli(2), {E::hwp_deg(0), E::hwp_deg(45)}});
    t.push_back({"sigma_z", pauli(3), {E::hwp_deg(0)}});
    Mat2 p;
    p << 1, 0, 0, 0;
    t.push_back({"proj_00", p, {E::polarizer_deg(0)}});
    p << 0, 0, 0, 1;
    t.push_back({"proj_11", p, {E::polarizer_deg(90)}});
    p << 0, 1, 0, 0;
    t.push_back({"proj_01", p, {E::hwp_deg(45), E::polarizer_deg(0)}});
    p << 0, 0, 1, 0;
    t.push_back({"proj_10", p, {E::hwp_deg(45), E::polarizer_deg(90)}});
    return t;
  }();
  return table;
}

/// Element sequence whose composed operator equals m up to global phase and
/// positive scale. Throws NotCompilable outside the bench table.
inline ElementSequence compile_kraus(const Mat2& m) {
  for (const auto& entry : bench_table())
    if (proportional_up_to_phase(m, entry.op)) return entry.sequence;
  throw Error(Errc::NotCompilable, "operator has no mode-1 optical realization in the bench table");
}

struct SequenceOutput {
  TwoQubitState state;
  double transmissivity = 1.0;
};

/// Sends mode 1 through the sequence; the output is renormalized and the
/// surviving fraction of pairs reported.
inline SequenceOutput apply_sequence(const ElementSequence& seq, const TwoQubitState& rho) {
  const Mat4 a = kron<2, 2>(compose(seq), Mat2::Identity());
  const Mat4 out = a * rho.matrix() * a.adjoint();
  const double t = out.trace().real();
  if (!(t >= 1e-15)) throw Error(Errc::FullyBlocked, "no pairs survive the element sequence", t);
  return {TwoQubitState(hermitize<4>(Mat4(out / t))), std::min(1.0, t)};
}

}  // namespace kraussim
