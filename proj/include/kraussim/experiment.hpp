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

// Simulated bench runs: an imperfect entangled-pair source, one acquisition
// slot per decomposition term, Poisson tomography in every slot, signed
// post-processing of the counts and reconstruction of the output state.

#pragma once

#include <cstdio>
#include <functional>
#include <future>
#include <ostream>
#include <thread>

#include "kraussim/decomposition.hpp"
#include "kraussim/tomography.hpp"

namespace kraussim {

// ---------------------------------------------------------------------------
// Source

struct IdealSource {};
struct WernerNoise {
  double visibility = 1.0;
};
struct CustomSource {
  TwoQubitState state;
};

struct SourceModel {
  std::variant<IdealSource, WernerNoise, CustomSource> kind = IdealSource{};
  double pair_rate = 1e4;  // coincidences per second

  static SourceModel ideal(double rate = 1e4) { return {IdealSource{}, rate}; }
  static SourceModel werner(double v, double rate = 1e4) { return {WernerNoise{v}, rate}; }
};

/// Werner visibility whose root fidelity to the target Bell state is f:
/// f^2 = v + (1 - v)/4.
inline double werner_visibility_for_fidelity(double f) {
  detail::require_range(f, 0.5, 1.0, "fidelity");
  return (4.0 * f * f - 1.0) / 3.0;
}

/// Source fidelity seen in the bench calibration.
inline constexpr double kCalibratedSourceFidelity = 0.93;

inline SourceModel calibrated_source(double rate = 1e4) {
  return SourceModel::werner(werner_visibility_for_fidelity(kCalibratedSourceFidelity), rate);
}

inline TwoQubitState source_state(const SourceModel& m) {
  if (!(m.pair_rate > 0.0)) throw Error(Errc::OutOfRange, "pair rate must be positive", m.pair_rate);
  return std::visit(
      [](const auto& k) -> TwoQubitState {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, IdealSource>) return bell_state(BellKind::PhiMinus);
        else if constexpr (std::is_same_v<K, WernerNoise>) return werner_state(k.visibility, BellKind::PhiMinus);
        else return k.state;
      },
      m.kind);
}

// ---------------------------------------------------------------------------
// Protocol

struct ProtocolOptions {
  bool noiseless = false;  // use Poisson means instead of draws
  Method method = Method::LinearInversion;
  MleOptions mle;
};

struct SlotRun {
  Slot slot;
  ElementSequence sequence;
  bool compiled = true;       // false: the operator was applied abstractly
  double transmissivity = 1.0;
  double scale = 1.0;         // composed optics = scale * e^{i phi} * M
  TwoQubitState output;       // renormalized state behind the optics
};

struct ProtocolRun {
  TomographyResult estimate;
  TwoQubitState theory;
  std::vector<SlotRun> slots;
  std::vector<CoincidenceRecord> records;
  std::vector<SettingEstimate> combined;  // signed effective probabilities
};

namespace detail {

inline SlotRun prepare_slot(const Slot& slot, const Term& term, const TwoQubitState& source) {
  SlotRun run{slot, {}, true, 1.0, 1.0, TwoQubitState()};
  Mat2 optics = term.op;
  try {
    run.sequence = compile_kraus(term.op);
    optics = compose(run.sequence);
    run.scale = 1.0 / proportional_up_to_phase(term.op, optics).value();
  } catch (const Error& e) {
    if (e.code() != Errc::NotCompilable) throw;
    run.compiled = false;
  }
  const Mat4 a = lift_to_mode1(optics);
  const Mat4 out = a * source.matrix() * a.adjoint();
  const double t = out.trace().real();
  if (!(t >= 1e-15)) throw Error(Errc::FullyBlocked, "slot optics block every pair", t);
  run.transmissivity = t;
  run.output = TwoQubitState(hermitize<4>(Mat4(out / t)));
  return run;
}

}  // namespace detail

/// Runs every slot of the decomposition's time partition against the source
/// and combines the 36 settings with signed weights:
///   q_k = sum_i p_i n_ik / (rate dt_i s_i^2)
/// which equals tr[P_k sum_i p_i M_i rho M_i^dagger] in the noiseless limit.
inline ProtocolRun run_protocol(const SignedDecomposition& d, const SourceModel& source, double total_seconds,
                                std::uint64_t seed, const ProtocolOptions& opt = {}) {
  require_trace_preserving(d);
  const TwoQubitState rho = source_state(source);
  const double rate = source.pair_rate;
  const TimePartition partition = to_partition(d, total_seconds);
  const auto settings = tomography_settings();

  ProtocolRun run;
  run.theory = apply_signed_mode1(d, rho);
  std::vector<double> combined(settings.size(), 0.0);
  Mat4 mle_mix = Mat4::Zero();

  for (std::size_t s = 0; s < partition.slots.size(); ++s) {
    const Slot& slot = partition.slots[s];
    const Term& term = d.terms()[slot.term];
    SlotRun sr = detail::prepare_slot(slot, term, rho);
    Rng rng(derive_seed(seed, s));
    std::vector<CoincidenceRecord> slot_records;
    for (std::size_t k = 0; k < settings.size(); ++k) {
      // pairs that survive the optics are what the detectors see
      CoincidenceRecord rec = simulate_counts(sr.output, settings[k], rate * sr.transmissivity, slot.duration, rng);
      rec.slot = s;
      rec.sign = slot.sign;
      const double observed = opt.noiseless ? rec.mean : static_cast<double>(rec.counts);
      combined[k] += term.weight * observed / (rate * slot.duration * sr.scale * sr.scale);
      slot_records.push_back(rec);
    }
    if (opt.method == Method::MaximumLikelihood) {
      const auto data = count_data(slot_records, rate, opt.noiseless);
      const TomographyResult slot_fit = reconstruct_mle(data, opt.mle);
      mle_mix += term.weight * slot_fit.intensity / (sr.scale * sr.scale) * slot_fit.rho_hat.matrix();
      run.estimate.iterations += slot_fit.iterations;
      run.estimate.converged = run.estimate.converged && slot_fit.converged;
    }
    run.records.insert(run.records.end(), slot_records.begin(), slot_records.end());
    run.slots.push_back(std::move(sr));
  }

  for (std::size_t k = 0; k < settings.size(); ++k) run.combined.push_back({settings[k], combined[k]});

  if (opt.method == Method::LinearInversion) {
    run.estimate = reconstruct_linear(run.combined);
  } else {
    const double trace = mle_mix.trace().real();
    if (!(trace > 0.0)) throw Error(Errc::NotPSD, "signed combination has nonpositive trace", trace);
    auto projected = project_to_physical<4>(Mat4(mle_mix / trace));
    run.estimate.rho_hat = projected.state;
    run.estimate.min_eigenvalue = projected.min_eigenvalue;
    run.estimate.method = Method::MaximumLikelihood;
  }
  return run;
}

// ---------------------------------------------------------------------------
// Dynamics sweeps

enum class FamilyKind { Depolarizing, GeneralizedAmplitudeDamping, AmplitudeDamping, Dephasing };

/// A one-parameter channel family together with its signed decomposition.
struct ChannelFamily {
  FamilyKind kind = FamilyKind::Depolarizing;
  double gamma = 0.0;  // GAD only

  static ChannelFamily dp() { return {FamilyKind::Depolarizing, 0.0}; }
  static ChannelFamily gad(double gamma) { return {FamilyKind::GeneralizedAmplitudeDamping, gamma}; }

  bool has_gamma() const { return kind == FamilyKind::GeneralizedAmplitudeDamping; }

  KrausChannel channel(double lambda) const {
    switch (kind) {
      case FamilyKind::Depolarizing: return depolarizing(lambda);
      case FamilyKind::GeneralizedAmplitudeDamping: return generalized_amplitude_damping(lambda, gamma);
      case FamilyKind::AmplitudeDamping: return amplitude_damping(lambda);
      case FamilyKind::Dephasing: return dephasing(lambda);
    }
    return depolarizing(lambda);
  }

  SignedDecomposition decomposition(double lambda) const {
    switch (kind) {
      case FamilyKind::Depolarizing: return dp_decomposition(lambda);
      case FamilyKind::GeneralizedAmplitudeDamping: return gad_decomposition(lambda, gamma);
      // gamma = 1 makes p4 vanish; dropping it leaves the AD family
      case FamilyKind::AmplitudeDamping: return reduce(gad_decomposition(lambda, 1.0), 4);
      case FamilyKind::Dephasing: return reduce(gad_decomposition(lambda, 0.5), {3, 4});
    }
    return dp_decomposition(lambda);
  }
};

struct SweepRow {
  double lambda = 0.0;
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double fid_theory = 0.0;
  double fid_sim = 0.0;
  double purity_theory = 0.0;
  double purity_sim = 0.0;
  double conc_theory = 0.0;
  double conc_sim = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr double kDeathThreshold = 1e-3;

/// First grid point from which the concurrence stays below the threshold.
/// Dying only at the last grid point does not count as sudden death.
inline std::optional<double> sudden_death(const std::vector<SweepRow>& rows, bool simulated,
                                          double threshold = kDeathThreshold) {
  if (rows.empty()) return std::nullopt;
  std::size_t first = rows.size();
  for (std::size_t i = rows.size(); i-- > 0;) {
    const double c = simulated ? rows[i].conc_sim : rows[i].conc_theory;
    if (c >= threshold) break;
    first = i;
  }
  if (first + 1 >= rows.size()) return std::nullopt;
  return rows[first].lambda;
}

struct SweepResult {
  ChannelFamily family;
  std::vector<SweepRow> rows;
  std::optional<double> death_theory;
  std::optional<double> death_sim;
};

/// lambda grid with `steps` points spanning [0, 1].
inline std::vector<double> unit_grid(int steps) {
  if (steps < 2) throw Error(Errc::OutOfRange, "a grid needs at least two points", steps);
  std::vector<double> g;
  for (int i = 0; i < steps; ++i) g.push_back(static_cast<double>(i) / (steps - 1));
  return g;
}

inline SweepRow sweep_point(const ChannelFamily& family, double lambda, const SourceModel& source,
                            double total_seconds, std::uint64_t seed, const ProtocolOptions& opt) {
  const TwoQubitState target = apply_mode1(family.channel(lambda), bell_state(BellKind::PhiMinus));
  const ProtocolRun run = run_protocol(family.decomposition(lambda), source, total_seconds, seed, opt);
  SweepRow row;
  row.lambda = lambda;
  if (family.has_gamma()) row.gamma = family.gamma;
  row.fid_theory = fidelity(run.theory, target);
  row.fid_sim = fidelity(run.estimate.rho_hat, target);
  row.purity_theory = purity(run.theory);
  row.purity_sim = purity(run.estimate.rho_hat);
  row.conc_theory = concurrence(run.theory);
  row.conc_sim = concurrence(run.estimate.rho_hat);
  row.seed = seed;
  return row;
}

/// Grid points are independent and seeded with derive_seed(seed, index), so
/// the result does not depend on `threads`.
inline SweepResult dynamics_sweep(const ChannelFamily& family, const std::vector<double>& lambdas,
                                  const SourceModel& source, double total_seconds, std::uint64_t seed,
                                  const ProtocolOptions& opt = {}, unsigned threads = 1) {
  for (double l : lambdas) detail::require_range(l, 0.0, 1.0, "lambda");
  SweepResult result{family, std::vector<SweepRow>(lambdas.size()), std::nullopt, std::nullopt};
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < lambdas.size(); i += stride)
      result.rows[i] = sweep_point(family, lambdas[i], source, total_seconds, derive_seed(seed, i), opt);
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, work, t, threads));
    for (auto& j : jobs) j.get();
  }
  result.death_theory = sudden_death(result.rows, false);
  result.death_sim = sudden_death(result.rows, true);
  return result;
}

inline constexpr const char* kSweepCsvHeader =
    "lambda,gamma,fid_theory,fid_sim,purity_theory,purity_sim,conc_theory,conc_sim,seed";

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << format_number(r.lambda) << ',' << format_number(r.gamma) << ',' << format_number(r.fid_theory) << ','
       << format_number(r.fid_sim) << ',' << format_number(r.purity_theory) << ',' << format_number(r.purity_sim)
       << ',' << format_number(r.conc_theory) << ',' << format_number(r.conc_sim) << ',' << r.seed << '\n';
  }
}

}  // namespace kraussim
