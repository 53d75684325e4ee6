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

// JSON forms of channels, decompositions, element sequences, states and run
// records. Complex entries are [re, im] pairs; matrices are flat row-major
// lists of them.

#pragma once

#include <nlohmann/json.hpp>

#include "kraussim/experiment.hpp"

namespace kraussim::io {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { throw Error(Errc::InvalidFormat, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace detail

template <int N>
json matrix_to_json(const CMatrix<N>& m) {
  json out = json::array();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

template <int N>
CMatrix<N> matrix_from_json(const json& j) {
  if (!j.is_array()) detail::bad("matrix must be an array of [re, im] entries");
  if (j.size() != static_cast<std::size_t>(N * N))
    throw Error(Errc::WrongDim, "matrix has " + std::to_string(j.size()) + " entries, expected " +
                                    std::to_string(N * N),
                static_cast<double>(j.size()));
  CMatrix<N> m;
  for (int k = 0; k < N * N; ++k) {
    const json& e = j[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      detail::bad("matrix entry must be [re, im]");
    m(k / N, k % N) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

template <int N>
json density_to_json(const DensityMatrix<N>& rho) {
  return {{"dim", N}, {"entries", matrix_to_json<N>(rho.matrix())}};
}

template <int N>
DensityMatrix<N> density_from_json(const json& j) {
  const json& entries = j.is_object() ? detail::field(j, "entries") : j;
  if (j.is_object() && j.contains("dim") && j.at("dim") != N)
    throw Error(Errc::WrongDim, "expected a " + std::to_string(N) + "-dimensional state", j.at("dim").get<double>());
  return DensityMatrix<N>(matrix_from_json<N>(entries));
}

// ---------------------------------------------------------------------------
// Channels

struct TrigParameters {
  double theta = 0.0;  // radians
  double phi = 0.0;
};

/// Everything a channel description in JSON can name.
using ChannelSpec = std::variant<Depolarizing, GeneralizedAmplitudeDamping, AmplitudeDamping, Dephasing,
                                 TrigParameters, KrausChannel>;

inline KrausChannel make_channel(const ChannelSpec& spec) {
  return std::visit(
      [](const auto& s) -> KrausChannel {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, TrigParameters>) return trig_channel(s.theta, s.phi);
        else if constexpr (std::is_same_v<S, KrausChannel>) return s;
        else return builtin_channel(BuiltinKind(s));
      },
      spec);
}

inline json channel_to_json(const ChannelSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Depolarizing>) return {{"kind", "dp"}, {"lambda", s.lambda}};
        else if constexpr (std::is_same_v<S, GeneralizedAmplitudeDamping>)
          return {{"kind", "gad"}, {"lambda", s.lambda}, {"gamma", s.gamma}};
        else if constexpr (std::is_same_v<S, AmplitudeDamping>) return {{"kind", "ad"}, {"lambda", s.lambda}};
        else if constexpr (std::is_same_v<S, Dephasing>) return {{"kind", "dephasing"}, {"lambda", s.lambda}};
        else if constexpr (std::is_same_v<S, TrigParameters>)
          return {{"kind", "trig"}, {"theta_deg", rad_to_deg(s.theta)}, {"phi_deg", rad_to_deg(s.phi)}};
        else {
          json ops = json::array();
          for (const auto& k : s.operators()) ops.push_back(matrix_to_json<2>(k));
          return {{"kind", "kraus"}, {"operators", ops}};
        }
      },
      spec);
}

inline ChannelSpec channel_from_json(const json& j) {
  const json& kind_field = detail::field(j, "kind");
  if (!kind_field.is_string()) detail::bad("channel kind must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "dp") return Depolarizing{detail::number(j, "lambda")};
  if (kind == "gad") return GeneralizedAmplitudeDamping{detail::number(j, "lambda"), detail::number(j, "gamma")};
  if (kind == "ad") return AmplitudeDamping{detail::number(j, "lambda")};
  if (kind == "dephasing") return Dephasing{detail::number(j, "lambda")};
  if (kind == "trig")
    return TrigParameters{deg_to_rad(detail::number(j, "theta_deg")), deg_to_rad(detail::number(j, "phi_deg"))};
  if (kind == "kraus") {
    const json& ops = detail::field(j, "operators");
    if (!ops.is_array()) detail::bad("operators must be an array");
    std::vector<Mat2> mats;
    for (const auto& o : ops) mats.push_back(matrix_from_json<2>(o));
    return KrausChannel(std::move(mats));
  }
  detail::bad("unknown channel kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Decompositions and partitions

inline json decomposition_to_json(const SignedDecomposition& d) {
  json out = json::array();
  for (const auto& t : d.terms()) {
    if (t.label != "matrix" && named_operator(t.label)) out.push_back({{"op", t.label}, {"weight", t.weight}});
    else out.push_back({{"matrix", matrix_to_json<2>(t.op)}, {"weight", t.weight}});
  }
  return out;
}

inline SignedDecomposition decomposition_from_json(const json& j) {
  if (!j.is_array()) detail::bad("decomposition must be an array of terms");
  std::vector<Term> terms;
  for (const auto& t : j) {
    const double w = detail::number(t, "weight");
    if (t.contains("op")) {
      if (!t.at("op").is_string()) detail::bad("op must be a string");
      const std::string name = t.at("op").get<std::string>();
      const auto op = named_operator(name);
      if (!op) detail::bad("unknown operator name '" + name + "'");
      terms.push_back({name, *op, w});
    } else {
      terms.push_back({"matrix", matrix_from_json<2>(detail::field(t, "matrix")), w});
    }
  }
  return SignedDecomposition(std::move(terms));
}

inline json partition_to_json(const TimePartition& tp) {
  json slots = json::array();
  for (const auto& s : tp.slots)
    slots.push_back({{"term", s.term}, {"op", s.label}, {"duration", s.duration}, {"sign", s.sign}});
  return {{"total", tp.total}, {"bench_time", tp.bench_time()}, {"slots", slots}};
}

// ---------------------------------------------------------------------------
// Optics

inline json sequence_to_json(const ElementSequence& seq) {
  json out = json::array();
  for (const auto& e : seq) {
    const double deg = rad_to_deg(e.angle);
    switch (e.kind) {
      case ElementKind::HWP: out.push_back({{"kind", "hwp"}, {"deg", deg}}); break;
      case ElementKind::QWP: out.push_back({{"kind", "qwp"}, {"deg", deg}}); break;
      case ElementKind::Polarizer:
        if (std::abs(deg) < 1e-9) out.push_back({{"kind", "pol"}, {"axis", "H"}});
        else if (std::abs(deg - 90.0) < 1e-9) out.push_back({{"kind", "pol"}, {"axis", "V"}});
        else out.push_back({{"kind", "pol"}, {"deg", deg}});
        break;
    }
  }
  return out;
}

inline ElementSequence sequence_from_json(const json& j) {
  if (!j.is_array()) detail::bad("element sequence must be an array");
  ElementSequence seq;
  for (const auto& e : j) {
    const json& kf = detail::field(e, "kind");
    if (!kf.is_string()) detail::bad("element kind must be a string");
    const std::string kind = kf.get<std::string>();
    if (kind == "hwp") seq.push_back(OpticalElement::hwp_deg(detail::number(e, "deg")));
    else if (kind == "qwp") seq.push_back(OpticalElement::qwp_deg(detail::number(e, "deg")));
    else if (kind == "pol") {
      if (e.contains("axis")) {
        const json& axis = e.at("axis");
        if (axis == "H") seq.push_back(OpticalElement::polarizer_deg(0));
        else if (axis == "V") seq.push_back(OpticalElement::polarizer_deg(90));
        else detail::bad("polarizer axis must be H or V");
      } else {
        seq.push_back(OpticalElement::polarizer_deg(detail::number(e, "deg")));
      }
    } else {
      detail::bad("unknown element kind '" + kind + "'");
    }
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Runs

inline json record_to_json(const CoincidenceRecord& r) {
  return {{"setting", r.setting.label()}, {"slot", r.slot},   {"duration", r.duration},
          {"counts", r.counts},           {"mean", r.mean},   {"sign", r.sign}};
}

inline CoincidenceRecord record_from_json(const json& j) {
  CoincidenceRecord r;
  const json& label = detail::field(j, "setting");
  if (!label.is_string()) detail::bad("setting must be a label string");
  r.setting = MeasurementSetting::from_label(label.get<std::string>());
  r.slot = detail::field(j, "slot").get<std::size_t>();
  r.duration = detail::number(j, "duration");
  r.counts = detail::field(j, "counts").get<std::uint64_t>();
  r.mean = detail::number(j, "mean");
  r.sign = detail::field(j, "sign").get<int>();
  return r;
}

inline const char* method_name(Method m) { return m == Method::LinearInversion ? "linear" : "mle"; }

inline json tomography_to_json(const TomographyResult& t) {
  json out = {{"method", method_name(t.method)},
              {"rho", density_to_json(t.rho_hat)},
              {"min_eigenvalue_before_projection", t.min_eigenvalue},
              {"iterations", t.iterations},
              {"converged", t.converged}};
  if (t.method == Method::MaximumLikelihood) out["intensity"] = t.intensity;
  return out;
}

inline json run_to_json(const ProtocolRun& run) {
  json slots = json::array();
  for (const auto& s : run.slots)
    slots.push_back({{"term", s.slot.term},
                     {"op", s.slot.label},
                     {"duration", s.slot.duration},
                     {"sign", s.slot.sign},
                     {"compiled", s.compiled},
                     {"sequence", sequence_to_json(s.sequence)},
                     {"transmissivity", s.transmissivity}});
  json records = json::array();
  for (const auto& r : run.records) records.push_back(record_to_json(r));
  json combined = json::object();
  for (const auto& c : run.combined) combined[c.setting.label()] = c.probability;
  return {{"slots", slots},
          {"records", records},
          {"combined_probabilities", combined},
          {"reconstruction", tomography_to_json(run.estimate)},
          {"theory", density_to_json(run.theory)},
          {"fidelity_to_theory", fidelity(run.estimate.rho_hat, run.theory)}};
}

inline json sweep_row_to_json(const SweepRow& r) {
  auto num = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
  return {{"lambda", r.lambda},         {"gamma", num(r.gamma)},          {"fid_theory", r.fid_theory},
          {"fid_sim", r.fid_sim},       {"purity_theory", r.purity_theory}, {"purity_sim", r.purity_sim},
          {"conc_theory", r.conc_theory}, {"conc_sim", r.conc_sim},       {"seed", r.seed}};
}

}  // namespace kraussim::io
