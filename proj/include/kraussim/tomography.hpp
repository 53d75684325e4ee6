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

// Two-qubit polarization tomography: the 36 product settings of
// {H, V, D, A, R, L}, Poisson coincidence counting, linear inversion and a
// maximum-likelihood fit.
//
// Circular convention: |R> = (|H> - i|V>)/sqrt2, |L> = (|H> + i|V>)/sqrt2.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kraussim/optics.hpp"
#include "kraussim/random.hpp"

namespace kraussim {

enum class Basis { H, V, D, A, R, L };

inline constexpr std::array<Basis, 6> kAllBases{Basis::H, Basis::V, Basis::D, Basis::A, Basis::R, Basis::L};

inline char basis_letter(Basis b) { return "HVDARL"[static_cast<int>(b)]; }

inline std::optional<Basis> basis_from_letter(char c) {
  for (Basis b : kAllBases)
    if (basis_letter(b) == c) return b;
  return std::nullopt;
}

/// One analysis arm: a quarter-wave plate followed by a polarizer.
struct ArmSetting {
  Basis basis = Basis::H;
  double qwp_angle = 0.0;
  double polarizer_angle = 0.0;

  /// Polarizer * QWP; the detected effect is its adjoint-square.
  Mat2 jones() const {
    return element_matrix({ElementKind::Polarizer, polarizer_angle}) * element_matrix({ElementKind::QWP, qwp_angle});
  }
  Mat2 projector() const {
    const Mat2 a = jones();
    return a.adjoint() * a;
  }
};

inline ArmSetting arm_setting(Basis b) {
  switch (b) {
    case Basis::H: return {b, 0.0, 0.0};
    case Basis::V: return {b, 0.0, deg_to_rad(90)};
    case Basis::D: return {b, deg_to_rad(45), deg_to_rad(45)};
    case Basis::A: return {b, deg_to_rad(135), deg_to_rad(135)};
    case Basis::R: return {b, 0.0, deg_to_rad(45)};
    case Basis::L: return {b, 0.0, deg_to_rad(135)};
  }
  return {};
}

struct MeasurementSetting {
  ArmSetting arm1;
  ArmSetting arm2;

  std::string label() const { return {basis_letter(arm1.basis), basis_letter(arm2.basis)}; }
  Mat4 projector() const { return kron<2, 2>(arm1.projector(), arm2.projector()); }

  static MeasurementSetting from_label(std::string_view label) {
    if (label.size() != 2) throw Error(Errc::InvalidFormat, "setting label must have two letters");
    const auto b1 = basis_from_letter(label[0]);
    const auto b2 = basis_from_letter(label[1]);
    if (!b1 || !b2) throw Error(Errc::InvalidFormat, "unknown basis letter in setting label");
    return {arm_setting(*b1), arm_setting(*b2)};
  }
};

/// All 36 products, mode-1 letter varying slowest.
inline std::vector<MeasurementSetting> tomography_settings() {
  std::vector<MeasurementSetting> out;
  for (Basis a : kAllBases)
    for (Basis b : kAllBases) out.push_back({arm_setting(a), arm_setting(b)});
  return out;
}

inline double outcome_probability(const TwoQubitState& rho, const MeasurementSetting& s) {
  return std::max(0.0, (s.projector() * rho.matrix()).trace().real());
}

struct CoincidenceRecord {
  MeasurementSetting setting;
  std::size_t slot = 0;
  double duration = 0.0;   // seconds
  std::uint64_t counts = 0;
  double mean = 0.0;       // Poisson mean the counts were drawn from
  int sign = 1;
};

inline CoincidenceRecord simulate_counts(const TwoQubitState& rho, const MeasurementSetting& s, double rate,
                                         double duration, Rng& rng) {
  if (!(duration >= 0.0)) throw Error(Errc::OutOfRange, "duration must be nonnegative", duration);
  if (!(rate > 0.0)) throw Error(Errc::OutOfRange, "pair rate must be positive", rate);
  CoincidenceRecord r;
  r.setting = s;
  r.duration = duration;
  r.mean = rate * duration * outcome_probability(rho, s);
  if (r.mean > 0.0) r.counts = std::poisson_distribution<std::uint64_t>(r.mean)(rng);
  return r;
}

inline CoincidenceRecord simulate_counts(const TwoQubitState& rho, const MeasurementSetting& s, double rate,
                                         double duration, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_counts(rho, s, rate, duration, rng);
}

// ---------------------------------------------------------------------------
// Reconstruction

enum class Method { LinearInversion, MaximumLikelihood };

struct TomographyResult {
  TwoQubitState rho_hat;
  Method method = Method::LinearInversion;
  double min_eigenvalue = 0.0;  // of the unconstrained estimate, before clipping
  int iterations = 0;
  bool converged = true;
  double intensity = 1.0;  // MLE: fitted fraction of the exposure that was detected
  std::vector<double> log_likelihood;  // MLE: one entry per accepted iterate
};

/// Effective outcome probability for one setting; may be negative after
/// signed combination.
struct SettingEstimate {
  MeasurementSetting setting;
  double probability = 0.0;
};

namespace detail {

inline Mat4 pauli_product(int a, int b) { return kron<2, 2>(pauli(a), pauli(b)); }

}  // namespace detail

/// Least-squares inversion onto the 16 Pauli products, followed by
/// projection onto the physical set (clip negative eigenvalues, renormalize).
inline TomographyResult reconstruct_linear(std::span<const SettingEstimate> data) {
  const auto rows = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd design(rows, 16);
  Eigen::VectorXd probs(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const Mat4 proj = data[static_cast<std::size_t>(k)].setting.projector();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        design(k, 4 * a + b) = 0.25 * (proj * detail::pauli_product(a, b)).trace().real();
    probs(k) = data[static_cast<std::size_t>(k)].probability;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  if (svd.rank() < 16) throw Error(Errc::DegenerateSystem, "settings do not span the two-qubit operator space",
                                   static_cast<double>(svd.rank()));
  const Eigen::VectorXd coeff = svd.solve(probs);
  Mat4 raw = Mat4::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) raw += 0.25 * coeff(4 * a + b) * detail::pauli_product(a, b);
  const double trace = raw.trace().real();
  if (!(trace > 0.0)) throw Error(Errc::NotPSD, "estimate has nonpositive trace", trace);
  raw /= trace;
  auto projected = project_to_physical<4>(raw);
  TomographyResult r;
  r.rho_hat = projected.state;
  r.min_eigenvalue = projected.min_eigenvalue;
  return r;
}

/// Per-setting relative frequencies from raw records of one exposure.
inline std::vector<SettingEstimate> estimates_from_records(std::span<const CoincidenceRecord> records, double rate) {
  std::vector<SettingEstimate> out;
  for (const auto& r : records)
    out.push_back({r.setting, r.duration > 0.0 ? static_cast<double>(r.counts) / (rate * r.duration) : 0.0});
  return out;
}

struct CountDatum {
  MeasurementSetting setting;
  double counts = 0.0;    // observed (integer under Poisson; real for exact data)
  double exposure = 0.0;  // pairs sent during the acquisition
};

inline std::vector<CountDatum> count_data(std::span<const CoincidenceRecord> records, double rate,
                                          bool use_mean = false) {
  std::vector<CountDatum> out;
  for (const auto& r : records)
    out.push_back({r.setting, use_mean ? r.mean : static_cast<double>(r.counts), rate * r.duration});
  return out;
}

struct MleOptions {
  int max_iter = 5000;
  double tol = 1e-10;
};

/// Poisson maximum likelihood with the overall detected intensity profiled
/// out, so slots whose optics discard pairs need no external normalization:
///   ll(rho) = sum_k n_k log p_k - N log(sum_k E_k p_k).
/// Iterates the diluted R-rho-R map rho <- (I + eG) rho (I + eG) / tr with a
/// step that halves until the likelihood does not decrease.
inline TomographyResult reconstruct_mle(std::span<const CountDatum> data, const MleOptions& opt = {}) {
  const std::size_t m = data.size();
  std::vector<Mat4> proj(m);
  double total = 0.0;
  Mat4 exposure_op = Mat4::Zero();
  for (std::size_t k = 0; k < m; ++k) {
    if (data[k].counts < 0.0) throw Error(Errc::OutOfRange, "MLE needs nonnegative counts", data[k].counts);
    proj[k] = data[k].setting.projector();
    total += data[k].counts;
    exposure_op += data[k].exposure * proj[k];
  }
  if (!(total > 0.0)) throw Error(Errc::DegenerateSystem, "no counts recorded");

  auto loglik = [&](const Mat4& rho) {
    double ll = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double p = (proj[k] * rho).trace().real();
      if (data[k].counts > 0.0) {
        if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
        ll += data[k].counts * std::log(p);
      }
    }
    const double e = (exposure_op * rho).trace().real();
    if (!(e > 0.0)) return -std::numeric_limits<double>::infinity();
    return ll - total * std::log(e);
  };

  Mat4 rho = Mat4::Identity() / 4.0;
  double ll = loglik(rho);
  TomographyResult r;
  r.method = Method::MaximumLikelihood;
  r.converged = false;
  r.log_likelihood.push_back(ll);
  double step = 1.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    Mat4 grad = -(total / (exposure_op * rho).trace().real()) * exposure_op;
    for (std::size_t k = 0; k < m; ++k) {
      if (data[k].counts <= 0.0) continue;
      grad += (data[k].counts / (proj[k] * rho).trace().real()) * proj[k];
    }
    grad = hermitize<4>(Mat4(grad / total));

    bool accepted = false;
    Mat4 next;
    double next_ll = ll;
    while (step > 1e-14) {
      const Mat4 a = Mat4::Identity() + step * grad;
      next = a * rho * a.adjoint();
      next = hermitize<4>(Mat4(next / next.trace().real()));
      next_ll = loglik(next);
      if (next_ll >= ll) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    r.iterations = it + 1;
    if (!accepted) {
      r.converged = true;
      break;
    }
    const double gain = next_ll - ll;
    rho = next;
    ll = next_ll;
    r.log_likelihood.push_back(ll);
    step = std::min(step * 2.0, 1e3);
    if (gain < opt.tol) {
      r.converged = true;
      break;
    }
  }
  auto projected = project_to_physical<4>(rho);
  r.rho_hat = projected.state;
  r.min_eigenvalue = projected.min_eigenvalue;
  r.intensity = total / (exposure_op * r.rho_hat.matrix()).trace().real();
  return r;
}

}  // namespace kraussim
