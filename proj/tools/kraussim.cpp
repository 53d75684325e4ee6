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

// Command-line front end.
//
//   kraussim channel   --kind gad --lambda 0.3 --gamma 0.2
//   kraussim decompose --kind dp --lambda 0.5 --dt 10
//   kraussim sweep     --kind dp --steps 101 --seed 42 --out dp.csv
//   kraussim tomo      --kind gad --lambda 0.1 --gamma 0 --seed 7
//
// Exit codes: 0 ok, 2 invalid configuration, 3 I/O failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "kraussim/io.hpp"
#include "kraussim/kraussim.hpp"

using namespace kraussim;
using nlohmann::json;

namespace {

/// Invalid user input; `field` names the offending flag.
struct ConfigError : std::runtime_error {
  ConfigError(std::string f, const std::string& what) : std::runtime_error(what), field(std::move(f)) {}
  std::string field;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string kind = "dp";
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<double> theta_deg;
  std::optional<double> phi_deg;
  int steps = 101;
  std::string source = "werner";
  double rate = 1e4;
  double dt = 10.0;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::string method = "linear";
  bool noiseless = false;
  unsigned threads = 1;
};

/// Runs a library call and turns range errors into a ConfigError on `field`.
template <class F>
auto checked(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

double need(const std::optional<double>& v, const std::string& field, const std::string& kind) {
  if (!v) throw ConfigError(field, "--" + field + " is required for --kind " + kind);
  return *v;
}

io::ChannelSpec channel_spec(const Config& c) {
  if (c.kind == "dp") return Depolarizing{need(c.lambda, "lambda", c.kind)};
  if (c.kind == "gad")
    return GeneralizedAmplitudeDamping{need(c.lambda, "lambda", c.kind), need(c.gamma, "gamma", c.kind)};
  if (c.kind == "ad") return AmplitudeDamping{need(c.lambda, "lambda", c.kind)};
  if (c.kind == "dephasing") return Dephasing{need(c.lambda, "lambda", c.kind)};
  if (c.kind == "trig")
    return io::TrigParameters{deg_to_rad(need(c.theta_deg, "theta", c.kind)), deg_to_rad(need(c.phi_deg, "phi", c.kind))};
  throw ConfigError("kind", "unknown channel kind '" + c.kind + "'");
}

KrausChannel build_channel(const io::ChannelSpec& spec) {
  try {
    return io::make_channel(spec);
  } catch (const Error& e) {
    // after the code name, range messages lead with the parameter name
    std::string field = e.what();
    field = field.substr(field.find(": ") + 2);
    field = field.substr(0, field.find_first_of(" ="));
    throw ConfigError(field, e.what());
  }
}

ChannelFamily family_for(const Config& c) {
  if (c.kind == "dp") return ChannelFamily::dp();
  if (c.kind == "gad") {
    const double g = need(c.gamma, "gamma", c.kind);
    checked("gamma", [&] {
      detail::require_range(g, 0.0, 1.0, "gamma");
      return 0;
    });
    return ChannelFamily::gad(g);
  }
  if (c.kind == "ad") return {FamilyKind::AmplitudeDamping, 0.0};
  if (c.kind == "dephasing") return {FamilyKind::Dephasing, 0.0};
  if (c.kind == "trig") throw ConfigError("kind", "the trigonometric family has two parameters and no lambda sweep");
  throw ConfigError("kind", "unknown channel kind '" + c.kind + "'");
}

/// The decomposition that realizes the configured channel on the bench.
SignedDecomposition decomposition_for(const Config& c, const KrausChannel& ch) {
  if (c.kind == "trig") return decomposition_from_kraus(ch);
  const double l = need(c.lambda, "lambda", c.kind);
  return checked("lambda", [&] { return family_for(c).decomposition(l); });
}

SourceModel source_for(const Config& c) {
  if (!(c.rate > 0.0) || !std::isfinite(c.rate)) throw ConfigError("rate", "--rate must be positive");
  if (c.source == "ideal") return SourceModel::ideal(c.rate);
  if (c.source == "werner") return calibrated_source(c.rate);
  if (c.source.rfind("werner:", 0) == 0) {
    double v = 0.0;
    std::istringstream is(c.source.substr(7));
    if (!(is >> v) || !is.eof()) throw ConfigError("source", "cannot parse visibility in '" + c.source + "'");
    checked("source", [&] {
      detail::require_range(v, 0.0, 1.0, "visibility");
      return 0;
    });
    return SourceModel::werner(v, c.rate);
  }
  throw ConfigError("source", "expected ideal, werner or werner:V, got '" + c.source + "'");
}

json source_json(const SourceModel& s) {
  json j = {{"pair_rate", s.pair_rate}};
  if (std::holds_alternative<IdealSource>(s.kind)) j["kind"] = "ideal";
  else if (const auto* w = std::get_if<WernerNoise>(&s.kind)) j.update({{"kind", "werner"}, {"visibility", w->visibility}});
  return j;
}

std::uint64_t resolve_seed(const Config& c) {
  if (c.seed) return *c.seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << s << '\n';
  return s;
}

ProtocolOptions protocol_options(const Config& c) {
  ProtocolOptions o;
  o.noiseless = c.noiseless;
  if (c.method == "mle") o.method = Method::MaximumLikelihood;
  else if (c.method != "linear") throw ConfigError("method", "expected linear or mle");
  return o;
}

void check_dt(const Config& c) {
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw ConfigError("dt", "--dt must be a positive number of seconds");
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw IoError("cannot open '" + c.out + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + c.out + "'");
}

json vec_json(const Vec3& v) { return {v(0), v(1), v(2)}; }

json mat3_json(const RealMatrix3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

json decomposition_report(const SignedDecomposition& d, double dt) {
  const TimePartition tp = to_partition(d, dt);
  return {{"terms", io::decomposition_to_json(d)},
          {"weights", d.weights()},
          {"overhead", d.overhead()},
          {"warnings", d.warnings()},
          {"partition", io::partition_to_json(tp)}};
}

void cmd_channel(const Config& c) {
  check_dt(c);
  const auto spec = channel_spec(c);
  const KrausChannel ch = build_channel(spec);
  const auto affine = to_affine(ch);
  const auto canon = canonical_form(affine);
  const auto fa = fujiwara_algoet_check(canon);
  json ops = json::array();
  for (const auto& k : ch.operators()) ops.push_back(io::matrix_to_json<2>(k));
  json report = {{"channel", io::channel_to_json(spec)},
                 {"kraus", ops},
                 {"completeness_defect", completeness_defect(ch)},
                 {"affine", {{"T", mat3_json(affine.T)}, {"tau", vec_json(affine.tau)}}},
                 {"canonical", {{"eta", vec_json(canon.eta)}, {"tau", vec_json(canon.tau)},
                                {"o1", mat3_json(canon.o1)}, {"o2", mat3_json(canon.o2)}}},
                 {"fa_check", {{"satisfied", fa.satisfied}, {"margin", fa.margin}}},
                 {"trig_subfamily", in_trig_subfamily(canon.eta, canon.tau.z())}};
  report["decomposition"] = decomposition_report(decomposition_for(c, ch), c.dt);
  emit(c, report.dump(2) + "\n");
}

void cmd_decompose(const Config& c) {
  check_dt(c);
  const auto spec = channel_spec(c);
  const KrausChannel ch = build_channel(spec);
  const auto d = decomposition_for(c, ch);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "term,op,weight,duration,sign\n";
    for (const auto& s : to_partition(d, c.dt).slots)
      os << s.term << ',' << s.label << ',' << format_number(d.terms()[s.term].weight) << ','
         << format_number(s.duration) << ',' << s.sign << '\n';
    emit(c, os.str());
    return;
  }
  json report = decomposition_report(d, c.dt);
  report["channel"] = io::channel_to_json(spec);
  report["max_deviation_from_channel"] = verify_against(d, ch, 200, 1);
  emit(c, report.dump(2) + "\n");
}

json death_json(const std::optional<double>& l, bool dp) {
  if (!l) return nullptr;
  json j = {{"lambda", *l}};
  // DP: the affine contraction is 1 - 4 lambda/3; the alternative axis is
  // lambda' = 4 lambda/3 (contraction 1 - lambda')
  if (dp) j["lambda_prime"] = 4.0 * *l / 3.0;
  return j;
}

void cmd_sweep(const Config& c) {
  check_dt(c);
  const ChannelFamily family = family_for(c);
  if (c.steps < 2) throw ConfigError("steps", "--steps must be at least 2");
  const SourceModel source = source_for(c);
  const auto opt = protocol_options(c);
  const std::uint64_t seed = resolve_seed(c);
  const auto result = dynamics_sweep(family, unit_grid(c.steps), source, c.dt, seed, opt, c.threads);
  const bool dp = family.kind == FamilyKind::Depolarizing;
  json meta = {{"kind", c.kind},
               {"source", source_json(source)},
               {"dt", c.dt},
               {"seed", seed},
               {"method", io::method_name(opt.method)},
               {"death_threshold", kDeathThreshold},
               {"sudden_death_theory", death_json(result.death_theory, dp)},
               {"sudden_death_sim", death_json(result.death_sim, dp)}};
  if (family.has_gamma()) meta["gamma"] = family.gamma;
  if (c.format == "csv") {
    std::ostringstream os;
    write_sweep_csv(os, result.rows);
    emit(c, os.str());
    std::cerr << meta.dump() << '\n';
    return;
  }
  json rows = json::array();
  for (const auto& r : result.rows) rows.push_back(io::sweep_row_to_json(r));
  meta["rows"] = rows;
  emit(c, meta.dump(2) + "\n");
}

void cmd_tomo(const Config& c) {
  check_dt(c);
  const auto spec = channel_spec(c);
  const KrausChannel ch = build_channel(spec);
  const auto d = decomposition_for(c, ch);
  const SourceModel source = source_for(c);
  const auto opt = protocol_options(c);
  const std::uint64_t seed = resolve_seed(c);
  const auto run = run_protocol(d, source, c.dt, seed, opt);
  json report = io::run_to_json(run);
  report["channel"] = io::channel_to_json(spec);
  report["source"] = source_json(source);
  report["seed"] = seed;
  report["concurrence"] = {{"theory", concurrence(run.theory)}, {"sim", concurrence(run.estimate.rho_hat)}};
  report["purity"] = {{"theory", purity(run.theory)}, {"sim", purity(run.estimate.rho_hat)}};
  emit(c, report.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kraussim: signed Kraus decompositions of qubit channels on a simulated photonic bench"};
  app.require_subcommand(1);
  Config c;

  auto add_channel_flags = [&c](CLI::App* sub) {
    sub->add_option("--kind", c.kind, "dp, gad, ad, dephasing or trig")->capture_default_str();
    sub->add_option("--lambda", c.lambda, "channel parameter in [0, 1]");
    sub->add_option("--gamma", c.gamma, "GAD stationary |0> population in [0, 1]");
    sub->add_option("--theta", c.theta_deg, "trig family theta, degrees");
    sub->add_option("--phi", c.phi_deg, "trig family phi, degrees");
    sub->add_option("--dt", c.dt, "acquisition window in seconds")->capture_default_str();
    sub->add_option("--out", c.out, "output path (default stdout)");
  };
  auto add_run_flags = [&c](CLI::App* sub) {
    sub->add_option("--source", c.source, "ideal, werner (calibrated) or werner:V")->capture_default_str();
    sub->add_option("--rate", c.rate, "pair rate in coincidences per second")->capture_default_str();
    sub->add_option("--seed", c.seed, "RNG seed; drawn and printed to stderr if absent");
    sub->add_option("--method", c.method, "linear or mle")->capture_default_str();
    sub->add_flag("--noiseless", c.noiseless, "use Poisson means instead of draws");
  };

  auto* channel = app.add_subcommand("channel", "report Kraus, affine and canonical forms, FA check, partition");
  add_channel_flags(channel);
  auto* decompose = app.add_subcommand("decompose", "print the signed decomposition and time partition");
  add_channel_flags(decompose);
  decompose->add_option("--format", c.format, "json or csv")->capture_default_str();
  auto* sweep = app.add_subcommand("sweep", "dynamics sweep over a lambda grid");
  add_channel_flags(sweep);
  add_run_flags(sweep);
  sweep->add_option("--steps", c.steps, "grid points on [0, 1]")->capture_default_str();
  sweep->add_option("--format", c.format, "csv or json");
  sweep->add_option("--threads", c.threads, "worker threads")->capture_default_str();
  auto* tomo = app.add_subcommand("tomo", "one simulated run with per-slot records and reconstruction");
  add_channel_flags(tomo);
  add_run_flags(tomo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (sweep->parsed() && sweep->count("--format") == 0) c.format = "csv";
  if (c.format != "csv" && c.format != "json") {
    std::cerr << "error: format: expected csv or json\n";
    return 2;
  }

  try {
    if (channel->parsed()) cmd_channel(c);
    else if (decompose->parsed()) cmd_decompose(c);
    else if (sweep->parsed()) cmd_sweep(c);
    else cmd_tomo(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.field << ": " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
