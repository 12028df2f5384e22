// Copyright 2026 The mqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "mqpt/compare.hpp"
#include "mqpt/moments.hpp"
#include "mqpt/serialization.hpp"

namespace mqpt {
namespace {

TEST(Serialization, DumpPrintsSeventeenDigits) {
  Json j;
  j["x"] = 0.1;
  j["n"] = 3;
  j["bad"] = std::numeric_limits<double>::quiet_NaN();
  j["v"] = Json::array({1.0, 2.5});
  EXPECT_EQ(dump(j), "{\n  \"x\": 0.10000000000000001,\n  \"n\": 3,\n  \"bad\": null,\n  \"v\": [1, 2.5]\n}\n");
}

TEST(Serialization, DumpKeepsInsertionOrder) {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = 2;
  const std::string s = dump(j);
  EXPECT_LT(s.find("zeta"), s.find("alpha"));
}

TEST(Serialization, TensorRoundTrip) {
  const auto t = catalog_tensor(process::Displacement{{0.3, -0.2}}, 3, 3);
  const auto back = process_tensor_from_json(Json::parse(dump(to_json(t))));
  EXPECT_EQ(compare_tensors(t, back).max_abs_error, 0.0);
  const auto bs = catalog_tensor(process::BeamSplitter{0.8, 0.6}, 1, 1);
  EXPECT_EQ(compare_tensors(bs, process_tensor_from_json(to_json(bs))).max_abs_error, 0.0);
}

TEST(Serialization, MomentTableRoundTrip) {
  const auto t = coherent_moments({{0.1, 0.2}, {-0.7, 0.4}}, 2);
  const auto back = moment_table_from_json(Json::parse(dump(to_json(t))));
  for (std::size_t f = 0; f < t.size(); ++f) EXPECT_EQ(t[f], back[f]);
}

TEST(Serialization, TensorSchema) {
  const auto j = to_json(catalog_tensor(process::Attenuation{0.5}, 1, 1));
  EXPECT_EQ(j["modes"], 1);
  EXPECT_EQ(j["cutoff_in"], 1);
  EXPECT_EQ(j["cutoff_out"], 1);
  ASSERT_EQ(j["entries"].size(), 4u);
  EXPECT_EQ(j["entries"][3]["jk"], Json::array({1, 1}));
  EXPECT_EQ(j["entries"][3]["mn"], Json::array({1, 1}));
  EXPECT_EQ(j["entries"][3]["re"], 0.25);
}

TEST(Serialization, ProcessSpecRoundTrip) {
  const std::vector<ProcessSpec> specs = {process::Identity{2},
                                          process::Attenuation{0.4},
                                          process::Displacement{{0.1, 0.9}},
                                          process::PhotonAdd{},
                                          process::BeamSplitter{0.6, 0.8},
                                          process::Nla{1.5, 4, process::NlaVacuumBranch::exclude},
                                          process::Decoherence{1.0, 0.5, 2.0},
                                          process::GaussianChannel{GaussianTriplet::identity(1)}};
  for (const auto& spec : specs) {
    const Json j = to_json(spec);
    EXPECT_EQ(to_json(process_spec_from_json(j)), j) << j.dump();
  }
}

TEST(Serialization, ProcessSpecErrorsNameTheField) {
  auto message = [](const Json& j) {
    try {
      process_spec_from_json(j);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::config);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message(Json{{"kind", "attenuation"}}).rfind("process.eta:", 0), 0u);
  EXPECT_EQ(message(Json{{"kind", "attenuation"}, {"eta", "high"}}).rfind("process.eta:", 0), 0u);
  EXPECT_EQ(message(Json{{"kind", "warp"}}).rfind("process.kind:", 0), 0u);
  EXPECT_EQ(message(Json{{"kind", "nla"}, {"g", 2.0}, {"scissors", 2}, {"vacuum_branch", "x"}})
                .rfind("process.vacuum_branch:", 0),
            0u);
  EXPECT_NE(message(Json{{"kind", "attenuation"}, {"eta", 2.0}}).find("eta must lie in (0, 1)"), std::string::npos);
  EXPECT_EQ(message(Json{{"kind", "displacement"}, {"beta", Json::array({1, 2, 3})}}).rfind("process.beta:", 0), 0u);
}

TEST(Serialization, CsvRows) {
  const auto csv = tensor_csv(catalog_tensor(process::PhotonSub{}, 1, 2));
  EXPECT_EQ(csv, "j,k,m,n,re,im\n0,0,1,1,1,0\n0,1,1,2,1,0\n1,0,2,1,1,0\n1,1,2,2,1,0\n");
  const auto two = tensor_csv(catalog_tensor(process::Identity{2}, 1, 1));
  EXPECT_NE(two.find("\n0;1,0;0,0;1,0;0,1,0\n"), std::string::npos);
}

}  // namespace
}  // namespace mqpt
