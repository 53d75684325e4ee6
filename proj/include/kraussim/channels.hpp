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

// Kraus-map algebra for single-qubit channels: application, Bloch-ball
// affine form, canonical form, complete-positivity conditions, the built-in
// channel families and Stinespring sampling of random channels.

#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "kraussim/random.hpp"
#include "kraussim/states.hpp"

namespace kraussim {

class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Mat2> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw Error(Errc::InvalidFormat, "a channel needs at least one Kraus operator");
  }

  const std::vector<Mat2>& operators() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  /// A qubit channel never needs more than four operators.
  bool is_minimal_size() const { return ops_.size() <= 4; }

 private:
  std::vector<Mat2> ops_;
};

/// max-abs entry of sum K^dagger K - I.
inline double completeness_defect(const KrausChannel& ch) {
  Mat2 sum = Mat2::Zero();
  for (const auto& k : ch.operators()) sum += k.adjoint() * k;
  return max_abs<2>(sum - Mat2::Identity());
}

inline void require_complete(const KrausChannel& ch, double tol = kDefaultTol) {
  const double d = completeness_defect(ch);
  if (!(d <= tol)) throw Error(Errc::IncompleteKraus, "Kraus operators violate completeness", d);
}

/// Linear extension of the channel to arbitrary 2x2 operators.
inline Mat2 apply_linear(const KrausChannel& ch, const Mat2& x) {
  Mat2 out = Mat2::Zero();
  for (const auto& k : ch.operators()) out += k * x * k.adjoint();
  return out;
}

inline QubitState apply(const KrausChannel& ch, const QubitState& rho) {
  require_complete(ch);
  return QubitState(hermitize<2>(apply_linear(ch, rho.matrix())));
}

/// M (x) I: acts on the mode-1 photon only.
inline Mat4 lift_to_mode1(const Mat2& m) { return kron<2, 2>(m, Mat2::Identity()); }

/// (channel (x) id) on a two-qubit state.
inline TwoQubitState apply_mode1(const KrausChannel& ch, const TwoQubitState& rho) {
  require_complete(ch);
  Mat4 out = Mat4::Zero();
  for (const auto& k : ch.operators()) {
    const Mat4 l = lift_to_mode1(k);
    out += l * rho.matrix() * l.adjoint();
  }
  return TwoQubitState(hermitize<4>(out));
}

// ---------------------------------------------------------------------------
// Affine and canonical forms

/// Bloch-ball action r -> T r + tau.
struct AffineRepresentation {
  RealMatrix3 T = RealMatrix3::Identity();
  Vec3 tau = Vec3::Zero();

  Vec3 operator()(const Vec3& r) const { return T * r + tau; }
};

/// Pushes the Pauli basis through the channel: tau_k = tr(s_k E(I))/2,
/// T_kj = tr(s_k E(s_j))/2.
inline AffineRepresentation to_affine(const KrausChannel& ch) {
  require_complete(ch);
  AffineRepresentation a;
  const Mat2 image_of_identity = apply_linear(ch, pauli(0));
  for (int k = 0; k < 3; ++k) {
    a.tau(k) = 0.5 * (pauli(k + 1) * image_of_identity).trace().real();
    for (int j = 0; j < 3; ++j)
      a.T(k, j) = 0.5 * (pauli(k + 1) * apply_linear(ch, pauli(j + 1))).trace().real();
  }
  return a;
}

/// T = o1 diag(eta) o2^T with o1, o2 proper rotations; eta carries the signs
/// that SO(3) cannot absorb. tau is expressed in the rotated frame, o1^T tau.
struct CanonicalForm {
  Vec3 eta = Vec3::Ones();
  Vec3 tau = Vec3::Zero();
  RealMatrix3 o1 = RealMatrix3::Identity();
  RealMatrix3 o2 = RealMatrix3::Identity();

  RealMatrix3 distortion() const { return o1 * eta.asDiagonal() * o2.transpose(); }
};

inline CanonicalForm canonical_form(const AffineRepresentation& a) {
  Svd3 f = svd3(a.T);
  CanonicalForm c;
  c.eta = f.s;
  if (f.o1.determinant() < 0) {
    f.o1.col(2) *= -1.0;
    c.eta(2) = -c.eta(2);
  }
  if (f.o2.determinant() < 0) {
    f.o2.col(2) *= -1.0;
    c.eta(2) = -c.eta(2);
  }
  c.o1 = f.o1;
  c.o2 = f.o2;
  c.tau = f.o1.transpose() * a.tau;
  return c;
}

struct FaVerdict {
  bool satisfied = true;
  double margin = 0.0;  // smallest slack; negative when violated
};

/// Fujiwara-Algoet conditions for a canonical map with shift (0, 0, tau_z):
///   (eta_x +- eta_y)^2 <= (1 +- eta_z)^2 - tau_z^2.
/// With tau_z = 0 this is the unital tetrahedron condition.
inline FaVerdict fujiwara_algoet_check(const Vec3& eta, double tau_z, double tol = kDefaultTol) {
  const double t2 = tau_z * tau_z;
  const double plus = (1.0 + eta.z()) * (1.0 + eta.z()) - t2 - (eta.x() + eta.y()) * (eta.x() + eta.y());
  const double minus = (1.0 - eta.z()) * (1.0 - eta.z()) - t2 - (eta.x() - eta.y()) * (eta.x() - eta.y());
  const double margin = std::min(plus, minus);
  return {margin >= -tol, margin};
}

/// Applies the condition along each axis in turn, pairing that axis's shift
/// component with it. Each orientation is a necessary condition for a
/// general shift: twirling with the Pauli along the chosen axis keeps eta and
/// removes the other two shift components.
inline FaVerdict fujiwara_algoet_check(const CanonicalForm& c, double tol = kDefaultTol) {
  FaVerdict worst{true, std::numeric_limits<double>::infinity()};
  for (int axis = 0; axis < 3; ++axis) {
    const int i = (axis + 1) % 3;
    const int j = (axis + 2) % 3;
    const FaVerdict v = fujiwara_algoet_check(Vec3(c.eta(i), c.eta(j), c.eta(axis)), c.tau(axis), tol);
    if (v.margin < worst.margin) worst = v;
  }
  return worst;
}

/// The sub-family on which the trigonometric parameterization lives:
/// eta_z = eta_x eta_y and tau_z^2 = (1 - eta_x^2)(1 - eta_y^2).
inline bool in_trig_subfamily(const Vec3& eta, double tau_z, double tol = 1e-9) {
  return std::abs(eta.z() - eta.x() * eta.y()) <= tol &&
         std::abs(tau_z * tau_z - (1.0 - eta.x() * eta.x()) * (1.0 - eta.y() * eta.y())) <= tol;
}

// ---------------------------------------------------------------------------
// Channel families

/// Two-operator channel with eta = (cos t, cos p, cos t cos p) and
/// tau = (0, 0, sin t sin p).
inline KrausChannel trig_channel(double theta, double phi) {
  constexpr double pi = 3.14159265358979323846;
  if (!(theta >= 0.0 && theta < 2.0 * pi)) throw Error(Errc::OutOfRange, "theta outside [0, 2pi)", theta);
  if (!(phi >= 0.0 && phi < pi)) throw Error(Errc::OutOfRange, "phi outside [0, pi)", phi);
  const double big = 0.5 * (theta + phi);
  const double small = 0.5 * (theta - phi);
  Mat2 k1, k2;
  k1 << std::cos(small), 0, 0, std::cos(big);
  k2 << 0, std::sin(big), -std::sin(small), 0;
  return KrausChannel({k1, k2});
}

/// The pair diag(cos T, cos P), [[0, sin P], [sin T, 0]] with T = (t+p)/2,
/// P = (t-p)/2. Realizes eta = (cos p, cos t, cos t cos p) and
/// tau_z = -sin t sin p, i.e. trig_channel up to fixed rotations.
inline KrausChannel trig_channel_swapped_pair(double theta, double phi) {
  const double big = 0.5 * (theta + phi);
  const double small = 0.5 * (theta - phi);
  Mat2 k1, k2;
  k1 << std::cos(big), 0, 0, std::cos(small);
  k2 << 0, std::sin(small), std::sin(big), 0;
  return KrausChannel({k1, k2});
}

struct Depolarizing {
  double lambda = 0.0;
};
struct GeneralizedAmplitudeDamping {
  double lambda = 0.0;
  double gamma = 0.0;
};
struct AmplitudeDamping {
  double lambda = 0.0;
};
struct Dephasing {
  double lambda = 0.0;
};

using BuiltinKind = std::variant<Depolarizing, GeneralizedAmplitudeDamping, AmplitudeDamping, Dephasing>;

/// K0 = sqrt(1-l) I, K_i = sqrt(l/3) sigma_i.
inline KrausChannel depolarizing(double lambda) {
  detail::require_range(lambda, 0.0, 1.0, "lambda");
  std::vector<Mat2> ops{std::sqrt(1.0 - lambda) * pauli(0)};
  if (lambda > 0.0)
    for (int k = 1; k <= 3; ++k) ops.push_back(std::sqrt(lambda / 3.0) * pauli(k));
  return KrausChannel(std::move(ops));
}

/// lambda is the parameterized time, gamma the stationary |0> population.
inline KrausChannel generalized_amplitude_damping(double lambda, double gamma) {
  detail::require_range(lambda, 0.0, 1.0, "lambda");
  detail::require_range(gamma, 0.0, 1.0, "gamma");
  const double sg = std::sqrt(gamma);
  const double sg1 = std::sqrt(1.0 - gamma);
  const double sl = std::sqrt(lambda);
  const double sl1 = std::sqrt(1.0 - lambda);
  Mat2 k0, k1, k2, k3;
  k0 << sg, 0, 0, sg * sl1;
  k1 << 0, sg * sl, 0, 0;
  k2 << sg1 * sl1, 0, 0, sg1;
  k3 << 0, 0, sg1 * sl, 0;
  return KrausChannel({k0, k1, k2, k3});
}

/// Decay towards |0>; identical to GAD with gamma = 1.
inline KrausChannel amplitude_damping(double lambda) {
  detail::require_range(lambda, 0.0, 1.0, "lambda");
  Mat2 k0, k1;
  k0 << 1, 0, 0, std::sqrt(1.0 - lambda);
  k1 << 0, std::sqrt(lambda), 0, 0;
  return KrausChannel({k0, k1});
}

/// Populations untouched, coherences scaled by sqrt(1 - lambda).
inline KrausChannel dephasing(double lambda) {
  detail::require_range(lambda, 0.0, 1.0, "lambda");
  Mat2 k0, k1;
  k0 << 1, 0, 0, std::sqrt(1.0 - lambda);
  k1 << 0, 0, 0, std::sqrt(lambda);
  return KrausChannel({k0, k1});
}

inline KrausChannel builtin_channel(const BuiltinKind& kind) {
  return std::visit(
      [](const auto& k) -> KrausChannel {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Depolarizing>) return depolarizing(k.lambda);
        else if constexpr (std::is_same_v<K, GeneralizedAmplitudeDamping>)
          return generalized_amplitude_damping(k.lambda, k.gamma);
        else if constexpr (std::is_same_v<K, AmplitudeDamping>) return amplitude_damping(k.lambda);
        else return dephasing(k.lambda);
      },
      kind);
}

/// Stinespring sampling: a Haar unitary U on system (x) environment
/// (dimension 2 * num_kraus) with the environment starting in |0>;
/// K_mu = <mu|U|0>.
inline KrausChannel random_cptp_channel(int num_kraus, std::uint64_t seed) {
  if (num_kraus < 1 || num_kraus > 4) throw Error(Errc::OutOfRange, "num_kraus must be in 1..4", num_kraus);
  Rng rng(seed);
  Eigen::MatrixXcd u;
  switch (num_kraus) {
    case 1: u = haar_unitary<2>(rng); break;
    case 2: u = haar_unitary<4>(rng); break;
    case 3: u = haar_unitary<6>(rng); break;
    default: u = haar_unitary<8>(rng); break;
  }
  std::vector<Mat2> ops;
  for (int mu = 0; mu < num_kraus; ++mu) {
    Mat2 k;
    for (int out = 0; out < 2; ++out)
      for (int in = 0; in < 2; ++in) k(out, in) = u(out * num_kraus + mu, in * num_kraus);
    ops.push_back(k);
  }
  return KrausChannel(std::move(ops));
}

}  // namespace kraussim
