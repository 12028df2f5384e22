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

#include <gtest/gtest.h>

#include "mqpt/compare.hpp"
#include "mqpt/moments.hpp"
#include "mqpt/tomography.hpp"

namespace mqpt {
namespace {

double error_vs_catalog(const ProcessSpec& spec, const Estimate& est) {
  return compare_tensors(est.tensor, catalog_tensor(spec, est.tensor.cutoff_out(), est.tensor.cutoff_in())).max_abs_error;
}

TEST(Tomography, RecoversAttenuation) {
  const ProcessSpec spec = process::Attenuation{0.7};
  const auto est = estimate_tensor(process_response(spec, 3), 1, SamplingPlan::standard(3), 3);
  EXPECT_LE(error_vs_catalog(spec, est), 1e-9);
  EXPECT_LE(est.condition_number, kMaxPlanCondition);
}

TEST(Tomography, RecoversPhotonAdditionAtHigherOrder) {
  const ProcessSpec spec = process::PhotonAdd{};
  const auto est = estimate_tensor(process_response(spec, 4), 1, SamplingPlan::standard(4), 4);
  EXPECT_LE(error_vs_catalog(spec, est), 1e-8);
}

TEST(Tomography, RecoversTwoModeIdentity) {
  const ProcessSpec spec = process::Identity{2};
  const auto est = estimate_tensor(process_response(spec, 2), 2, SamplingPlan::standard(2, 2), 2);
  EXPECT_LE(error_vs_catalog(spec, est), 1e-9);
}

TEST(Tomography, LinearInTheResponse) {
  const ProbeResponse r1 = process_response(process::Attenuation{0.5}, 3);
  const ProbeResponse r2 = process_response(process::Displacement{{0.1, -0.2}}, 3);
  const Complex a{0.7, 0.0}, b{-0.4, 1.1};
  const ProbeResponse mix = [&](const Amplitudes& alpha) {
    const auto x = r1(alpha);
    const auto y = r2(alpha);
    MomentTable out(1, 3);
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = a * x[f] + b * y[f];
    return out;
  };
  const auto plan = SamplingPlan::standard(3);
  const auto e1 = estimate_tensor(r1, 1, plan, 3).tensor;
  const auto e2 = estimate_tensor(r2, 1, plan, 3).tensor;
  const auto em = estimate_tensor(mix, 1, plan, 3).tensor;
  for (std::size_t o = 0; o < em.out_box().size(); ++o)
    for (std::size_t i = 0; i < em.in_box().size(); ++i)
      EXPECT_NEAR(std::abs(em(o, i) - (a * e1(o, i) + b * e2(o, i))), 0.0, 1e-9);
}

TEST(Tomography, NoisyIdentityWithinBound) {
  const ProcessSpec spec = process::Identity{};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto est =
        estimate_tensor(noisy_response(process_response(spec, 4), 1e-6, seed), 1, SamplingPlan::standard(4), 4);
    EXPECT_LE(error_vs_catalog(spec, est), 1e-4) << "seed " << seed;
  }
}

TEST(Tomography, NoiseIsDeterministicPerSeed) {
  const auto base = process_response(process::Identity{}, 2);
  const auto a = noisy_response(base, 1e-3, 9);
  const auto b = noisy_response(base, 1e-3, 9);
  const auto c = noisy_response(base, 1e-3, 10);
  const Amplitudes alpha{{0.3, 0.4}};
  const auto ta = a(alpha), tb = b(alpha), tc = c(alpha);
  bool differs = false;
  for (std::size_t f = 0; f < ta.size(); ++f) {
    EXPECT_EQ(ta[f], tb[f]);
    differs = differs || ta[f] != tc[f];
  }
  EXPECT_TRUE(differs);
  // Repeating a query after others returns the same values.
  a({{0.9, 0.0}});
  const auto again = a(alpha);
  for (std::size_t f = 0; f < ta.size(); ++f) EXPECT_EQ(again[f], ta[f]);
}

TEST(Tomography, ZeroSigmaLeavesResponseUnchanged) {
  const auto base = process_response(process::Attenuation{0.4}, 3);
  const auto noisy = noisy_response(base, 0.0, 1);
  const Amplitudes alpha{{0.2, -0.6}};
  const auto x = base(alpha), y = noisy(alpha);
  for (std::size_t f = 0; f < x.size(); ++f) EXPECT_EQ(x[f], y[f]);
}

TEST(Tomography, NoiseScaleMatchesSigma) {
  const auto base = process_response(process::Identity{}, 1);
  const double sigma = 1e-2;
  const auto noisy = noisy_response(base, sigma, 4);
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < 400; ++i) {
    const Amplitudes alpha{{0.001 * i, 0.0}};
    const Complex d = noisy(alpha).at(0, 0) - 1.0;
    sum += std::norm(d) / std::pow(sigma * 2.0, 2);
    ++count;
  }
  EXPECT_NEAR(sum / count, 1.0, 0.2);
}

TEST(Tomography, PlanValidation) {
  auto plan = SamplingPlan::standard(3);
  EXPECT_NO_THROW(plan.validate());
  auto few_angles = plan;
  few_angles.angular_count = 2 * plan.max_order;
  EXPECT_THROW(few_angles.validate(), Error);
  auto unsorted = plan;
  std::swap(unsorted.radii[0], unsorted.radii[1]);
  EXPECT_THROW(unsorted.validate(), Error);
  auto negative = plan;
  negative.radii[0] = -0.1;
  EXPECT_THROW(negative.validate(), Error);
  auto too_few = plan;
  too_few.fit_terms = plan.max_order;
  EXPECT_THROW(too_few.validate(), Error);
}

TEST(Tomography, IllConditionedPlanIsRejected) {
  try {
    estimate_tensor(process_response(process::Identity{}, 2), 1, SamplingPlan::standard(12), 2);
    FAIL() << "expected ill_conditioned";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ill_conditioned);
  }
}

TEST(Tomography, ResponseWithWrongModesIsRejected) {
  EXPECT_THROW(estimate_tensor(process_response(process::Identity{2}, 2), 1, SamplingPlan::standard(2), 2), Error);
}

}  // namespace
}  // namespace mqpt
