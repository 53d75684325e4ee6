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

#include "kraussim/io.hpp"

using namespace kraussim;
using nlohmann::json;

TEST(Json, MatrixAndStateRoundTrip) {
  Rng rng(3);
  const TwoQubitState rho(random_density_matrix<4>(rng));
  const json j = io::density_to_json(rho);
  const auto back = io::density_from_json<4>(json::parse(j.dump()));
  EXPECT_LT((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(j.at("dim"), 4);
}

TEST(Json, WrongDim) {
  const json j = io::density_to_json(QubitState());
  try {
    io::density_from_json<4>(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongDim);
  }
  try {
    io::matrix_from_json<2>(io::matrix_to_json<4>(Mat4::Identity()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongDim);
    EXPECT_EQ(e.value(), 16.0);
  }
}

TEST(Json, ChannelRoundTrip) {
  const std::vector<io::ChannelSpec> specs = {
      Depolarizing{0.3}, GeneralizedAmplitudeDamping{0.3, 0.2}, AmplitudeDamping{0.5}, Dephasing{0.25},
      io::TrigParameters{deg_to_rad(40), deg_to_rad(70)}, random_cptp_channel(3, 8)};
  for (const auto& spec : specs) {
    const json j = io::channel_to_json(spec);
    const auto back = io::channel_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.index(), spec.index());
    const auto a = to_affine(io::make_channel(spec));
    const auto b = to_affine(io::make_channel(back));
    EXPECT_LT((a.T - b.T).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((a.tau - b.tau).cwiseAbs().maxCoeff(), 1e-12);
  }
  const auto gad = io::channel_from_json(json::parse(R"({"kind": "gad", "lambda": 0.3, "gamma": 0.2})"));
  EXPECT_NEAR(std::get<GeneralizedAmplitudeDamping>(gad).gamma, 0.2, 0);
  EXPECT_THROW(io::channel_from_json(json::parse(R"({"kind": "gad", "lambda": 0.3})")), Error);
  EXPECT_THROW(io::channel_from_json(json::parse(R"({"kind": "bitflip"})")), Error);
}

TEST(Json, DecompositionRoundTrip) {
  for (const auto& d : {dp_decomposition(0.4), gad_decomposition(0.1, 0.0),
                        decomposition_from_kraus(random_cptp_channel(2, 1))}) {
    const auto back = io::decomposition_from_json(json::parse(io::decomposition_to_json(d).dump()));
    ASSERT_EQ(back.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      EXPECT_EQ(back.terms()[i].label, d.terms()[i].label);
      EXPECT_EQ(back.terms()[i].weight, d.terms()[i].weight);
      EXPECT_LT((back.terms()[i].op - d.terms()[i].op).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
  const auto parsed = io::decomposition_from_json(json::parse(R"([{"op": "sigma_x", "weight": 1.0}])"));
  EXPECT_EQ(parsed.terms()[0].label, "sigma_x");
  EXPECT_THROW(io::decomposition_from_json(json::parse(R"([{"op": "hadamard", "weight": 1.0}])")), Error);
}

TEST(Json, SequenceRoundTrip) {
  const auto seq = io::sequence_from_json(json::parse(R"([{"kind":"hwp","deg":45.0}, {"kind":"pol","axis":"H"}])"));
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_LT((compose(seq) - *named_operator("proj_01")).cwiseAbs().maxCoeff(), 1e-12);
  const ElementSequence mixed{OpticalElement::qwp_deg(30), OpticalElement::polarizer_deg(90),
                              OpticalElement::polarizer_deg(12.5)};
  const auto back = io::sequence_from_json(io::sequence_to_json(mixed));
  ASSERT_EQ(back.size(), 3u);
  EXPECT_LT((compose(back) - compose(mixed)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(io::sequence_to_json(mixed)[1].at("axis"), "V");
}

TEST(Json, RecordRoundTrip) {
  const auto run = run_protocol(gad_decomposition(0.1, 0.0), SourceModel::ideal(), 1.0, 3);
  const json j = io::run_to_json(run);
  const json reparsed = json::parse(j.dump());
  ASSERT_EQ(reparsed.at("records").size(), run.records.size());
  for (std::size_t i = 0; i < run.records.size(); i += 17) {
    const auto r = io::record_from_json(reparsed.at("records")[i]);
    EXPECT_EQ(r.setting.label(), run.records[i].setting.label());
    EXPECT_EQ(r.counts, run.records[i].counts);
    EXPECT_EQ(r.sign, run.records[i].sign);
    EXPECT_EQ(r.slot, run.records[i].slot);
    EXPECT_EQ(r.mean, run.records[i].mean);
  }
  const auto est = io::density_from_json<4>(reparsed.at("reconstruction").at("rho"));
  EXPECT_LT((est.matrix() - run.estimate.rho_hat.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}
