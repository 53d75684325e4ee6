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

// Signed-weight Kraus decompositions: a target channel written as
// sum_i p_i M_i rho M_i^dagger where every M_i is realizable on its own and
// the weights p_i (possibly negative) become fractions of the acquisition
// time. Negative weights mean the counts of that slot are subtracted.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "kraussim/channels.hpp"

namespace kraussim {

/// Operator names understood by the serializers and the optical compiler.
/// proj_ij is |i><j|.
inline std::optional<Mat2> named_operator(std::string_view name) {
  Mat2 m = Mat2::Zero();
  if (name == "identity") return pauli(0);
  if (name == "sigma_x") return pauli(1);
  if (name == "sigma_y") return pauli(2);
  if (name == "sigma_z") return pauli(3);
  if (name.size() == 7 && name.substr(0, 5) == "proj_") {
    const int i = name[5] - '0';
    const int j = name[6] - '0';
    if ((i == 0 || i == 1) && (j == 0 || j == 1)) {
      m(i, j) = 1.0;
      return m;
    }
  }
  return std::nullopt;
}

struct Term {
  std::string label;  // a named_operator() name, or "matrix"
  Mat2 op;
  double weight = 0.0;
};

class SignedDecomposition {
 public:
  SignedDecomposition(std::vector<Term> terms, std::vector<std::string> warnings = {})
      : terms_(std::move(terms)), warnings_(std::move(warnings)) {
    if (terms_.empty()) throw Error(Errc::InvalidFormat, "decomposition has no terms");
    bool any_positive = false;
    for (const auto& t : terms_) {
      if (!std::isfinite(t.weight) || !t.op.allFinite()) throw Error(Errc::InvalidFormat, "non-finite term");
      any_positive = any_positive || t.weight > 0.0;
    }
    if (!any_positive) throw Error(Errc::InvalidFormat, "decomposition needs a positive weight");
  }

  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t size() const { return terms_.size(); }

  std::vector<double> weights() const {
    std::vector<double> w;
    for (const auto& t : terms_) w.push_back(t.weight);
    return w;
  }

  /// Total bench time relative to the acquisition window: sum |p_i|.
  double overhead() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.weight);
    return s;
  }

  /// max-abs entry of sum p_i M_i^dagger M_i - I.
  double trace_defect() const {
    Mat2 sum = Mat2::Zero();
    for (const auto& t : terms_) sum += t.weight * (t.op.adjoint() * t.op);
    return max_abs<2>(sum - Mat2::Identity());
  }

 private:
  std::vector<Term> terms_;
  std::vector<std::string> warnings_;
};

inline Term named_term(std::string_view name, double weight) {
  return {std::string(name), *named_operator(name), weight};
}

/// {I, sx, sy, sz} with weights (1 - l, l/3, l/3, l/3). Above l = 3/4 the map
/// overshoots the maximally mixed point but stays CPTP; flagged, not refused.
inline SignedDecomposition dp_decomposition(double lambda) {
  detail::require_range(lambda, 0.0, 1.0, "lambda");
  std::vector<std::string> warnings;
  if (lambda > 0.75) warnings.emplace_back("over-depolarized: lambda > 3/4");
  const double third = lambda / 3.0;
  return SignedDecomposition({named_term("identity", 1.0 - lambda), named_term("sigma_x", third),
                              named_term("sigma_y", third), named_term("sigma_z", third)},
                             std::move(warnings));
}

/// {I, |0><0|, |1><1|, |0><1|, |1><0|} reproducing generalized amplitude
/// damping exactly. The coherence fixes p0 = sqrt(1 - l); p1 and p2 then
/// follow from the two diagonal trace-preservation constraints
///   p0 + p1 + p4 = 1,   p0 + p2 + p3 = 1
/// and go negative when sqrt(1 - l) exceeds the surviving population.
inline SignedDecomposition gad_decomposition(double lambda, double gamma) {
  detail::require_range(lambda, 0.0, 1.0, "lambda");
  detail::require_range(gamma, 0.0, 1.0, "gamma");
  const double coherence = std::sqrt(1.0 - lambda);
  const double p3 = lambda * gamma;
  const double p4 = lambda - lambda * gamma;
  const double p1 = 1.0 - coherence - p4;
  const double p2 = 1.0 - coherence - p3;
  return SignedDecomposition({named_term("identity", coherence), named_term("proj_00", p1),
                              named_term("proj_11", p2), named_term("proj_01", p3), named_term("proj_10", p4)});
}

/// Positive decomposition of an arbitrary Kraus channel: each K_i is scaled to
/// unit operator norm and its squared norm becomes the weight.
inline SignedDecomposition decomposition_from_kraus(const KrausChannel& ch) {
  std::vector<Term> terms;
  for (const auto& k : ch.operators()) {
    const double s = Eigen::JacobiSVD<Mat2>(k).singularValues()(0);
    if (s == 0.0) continue;
    terms.push_back({"matrix", k / s, s * s});
  }
  return SignedDecomposition(std::move(terms));
}

inline void require_trace_preserving(const SignedDecomposition& d, double tol = kDefaultTol) {
  const double defect = d.trace_defect();
  if (!(defect <= tol)) throw Error(Errc::NotTracePreserving, "sum p_i M_i^dagger M_i differs from I", defect);
}

/// sum_i p_i M_i x M_i^dagger without validity checks.
inline Mat2 apply_signed_linear(const SignedDecomposition& d, const Mat2& x) {
  Mat2 out = Mat2::Zero();
  for (const auto& t : d.terms()) out += t.weight * (t.op * x * t.op.adjoint());
  return out;
}

inline QubitState apply_signed(const SignedDecomposition& d, const QubitState& rho) {
  require_trace_preserving(d);
  return QubitState(hermitize<2>(apply_signed_linear(d, rho.matrix())));
}

/// Signed map on mode 1 of a two-qubit state.
inline TwoQubitState apply_signed_mode1(const SignedDecomposition& d, const TwoQubitState& rho) {
  require_trace_preserving(d);
  Mat4 out = Mat4::Zero();
  for (const auto& t : d.terms()) {
    const Mat4 l = lift_to_mode1(t.op);
    out += t.weight * (l * rho.matrix() * l.adjoint());
  }
  return TwoQubitState(hermitize<4>(out));
}

namespace detail {

inline Eigen::Vector4d pauli_coefficients(const Mat2& h) {
  Eigen::Vector4d c;
  for (int k = 0; k < 4; ++k) c(k) = 0.5 * (pauli(k) * h).trace().real();
  return c;
}

inline bool proportional_to_identity(const Mat2& h, double tol) {
  const Eigen::Vector4d c = pauli_coefficients(h);
  return c.tail<3>().cwiseAbs().maxCoeff() <= tol * std::max(1.0, std::abs(c(0)));
}

}  // namespace detail

/// Removes the listed terms and re-fits the remaining weights so that the
/// result is trace preserving again. The defect left by the removal is
/// absorbed by the minimum-norm change of the non-unitary terms' weights;
/// when only unitary terms remain, they are rescaled proportionally.
inline SignedDecomposition reduce(const SignedDecomposition& d, const std::vector<std::size_t>& drop) {
  for (auto i : drop)
    if (i >= d.size()) throw Error(Errc::OutOfRange, "term index out of range", static_cast<double>(i));
  std::vector<Term> kept;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) kept.push_back(d.terms()[i]);
  if (kept.empty()) throw Error(Errc::Unsatisfiable, "every term was dropped");

  Mat2 defect = Mat2::Identity();
  for (const auto& t : kept) defect -= t.weight * (t.op.adjoint() * t.op);

  std::vector<std::size_t> free_terms;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (!detail::proportional_to_identity(kept[i].op.adjoint() * kept[i].op, 1e-12)) free_terms.push_back(i);

  if (free_terms.empty()) {
    double total = 0.0;
    for (const auto& t : kept) total += t.weight * (t.op.adjoint() * t.op).trace().real() / 2.0;
    if (!(total > 0.0)) throw Error(Errc::Unsatisfiable, "no positive weight left to rescale");
    for (auto& t : kept) t.weight /= total;
  } else {
    Eigen::MatrixXd a(4, static_cast<Eigen::Index>(free_terms.size()));
    for (std::size_t c = 0; c < free_terms.size(); ++c) {
      const Term& t = kept[free_terms[c]];
      a.col(static_cast<Eigen::Index>(c)) = detail::pauli_coefficients(t.op.adjoint() * t.op);
    }
    const Eigen::Vector4d b = detail::pauli_coefficients(defect);
    const Eigen::VectorXd delta = a.completeOrthogonalDecomposition().solve(b);
    const double residual = (a * delta - b).cwiseAbs().maxCoeff();
    if (residual > kDefaultTol) throw Error(Errc::Unsatisfiable, "removed term cannot be compensated", residual);
    for (std::size_t c = 0; c < free_terms.size(); ++c) kept[free_terms[c]].weight += delta(static_cast<Eigen::Index>(c));
  }
  for (auto& t : kept)
    if (std::abs(t.weight) < 1e-15) t.weight = 0.0;
  return SignedDecomposition(std::move(kept), d.warnings());
}

inline SignedDecomposition reduce(const SignedDecomposition& d, std::size_t drop) {
  return reduce(d, std::vector<std::size_t>{drop});
}

// ---------------------------------------------------------------------------
// Time partitions

struct Slot {
  std::size_t term = 0;  // index into the source decomposition
  std::string label;
  double duration = 0.0;  // seconds
  int sign = 1;
};

/// Acquisition window split into per-term exposures. Only terms with nonzero
/// weight get a slot; the bench time sum of durations is total * overhead.
struct TimePartition {
  double total = 0.0;
  std::vector<Slot> slots;

  double bench_time() const {
    double s = 0.0;
    for (const auto& slot : slots) s += slot.duration;
    return s;
  }

  /// p_i = sign * dt_i / total, one per slot.
  std::vector<double> weights() const {
    std::vector<double> w;
    for (const auto& slot : slots) w.push_back(slot.sign * slot.duration / total);
    return w;
  }
};

inline TimePartition to_partition(const SignedDecomposition& d, double total_seconds) {
  if (!(total_seconds > 0.0) || !std::isfinite(total_seconds))
    throw Error(Errc::OutOfRange, "acquisition time must be positive", total_seconds);
  TimePartition tp{total_seconds, {}};
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Term& t = d.terms()[i];
    if (t.weight == 0.0) continue;
    tp.slots.push_back({i, t.label, std::abs(t.weight) * total_seconds, t.weight < 0.0 ? -1 : 1});
  }
  return tp;
}

/// Largest entry-wise deviation between the signed map and a Kraus channel
/// over random input states.
inline double verify_against(const SignedDecomposition& d, const KrausChannel& ch, int n_states,
                             std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < n_states; ++s) {
    const Mat2 rho = s % 2 == 0 ? bloch_to_density(BlochVector::from(random_bloch_vector(rng))).matrix()
                                : random_density_matrix<2>(rng);
    const Mat2 diff = apply_signed_linear(d, rho) - apply_linear(ch, rho);
    worst = std::max(worst, max_abs<2>(diff));
  }
  return worst;
}

}  // namespace kraussim
