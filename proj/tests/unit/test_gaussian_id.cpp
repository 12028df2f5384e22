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

#include <random>

#include <gtest/gtest.h>

#include "mqpt/gaussian_id.hpp"
#include "mqpt/processes.hpp"

namespace mqpt {
namespace {

struct Sample {
  std::vector<Eigen::VectorXd> means;
  Eigen::MatrixXd cov;
};

// Outputs computed directly from x_out = S x + D and V_out = S V Sᵀ + E with V = I/4.
Sample simulate(const GaussianTriplet& t, const std::vector<Amplitudes>& probes) {
  Sample s;
  for (const auto& alpha : probes) {
    Eigen::VectorXd x(2 * alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      x(2 * i) = alpha[i].real();
      x(2 * i + 1) = alpha[i].imag();
    }
    s.means.push_back(t.S * x + t.D);
  }
  s.cov = t.S * t.S.transpose() / 4.0 + t.E_noise;
  return s;
}

GaussianTriplet random_triplet(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 2 * m;
  GaussianTriplet t;
  t.S = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return u(rng); });
  t.D = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
  const Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return u(rng); });
  t.E_noise = A.transpose() * A / 10.0;
  return t;
}

double triplet_error(const GaussianTriplet& a, const GaussianTriplet& b) {
  return std::max({(a.S - b.S).cwiseAbs().maxCoeff(), (a.E_noise - b.E_noise).cwiseAbs().maxCoeff(),
                   (a.D - b.D).cwiseAbs().maxCoeff()});
}

TEST(GaussianId, RecoversRandomTriplets) {
  std::mt19937_64 rng(17);
  for (int m = 1; m <= 3; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto truth = random_triplet(m, rng);
      const auto probes = default_probes(m);
      ASSERT_EQ(probes.size(), static_cast<std::size_t>(2 * m + 1));
      const auto s = simulate(truth, probes);
      const auto id = identify_gaussian(probes, s.means, s.cov);
      EXPECT_LE(triplet_error(id.triplet, truth), 1e-10);
      EXPECT_LT(id.condition_number, kMaxResourceCondition);
    }
  }
}

TEST(GaussianId, ExtraProbesUseLeastSquares) {
  std::mt19937_64 rng(3);
  const auto truth = random_triplet(1, rng);
  auto probes = default_probes(1);
  probes.push_back({{0.5, -0.5}});
  probes.push_back({{-1.0, 0.3}});
  const auto s = simulate(truth, probes);
  EXPECT_LE(triplet_error(identify_gaussian(probes, s.means, s.cov).triplet, truth), 1e-10);
}

TEST(GaussianId, RecoversCatalogBeamSplitter) {
  const auto truth = *gaussian_triplet_of(process::BeamSplitter{0.8, 0.6});
  const auto probes = default_probes(2);
  const auto s = simulate(truth, probes);
  EXPECT_LE(triplet_error(identify_gaussian(probes, s.means, s.cov).triplet, truth), 1e-12);
}

TEST(GaussianId, TooFewProbesIsUnderDetermined) {
  for (int m = 1; m <= 3; ++m) {
    auto probes = default_probes(m);
    probes.pop_back();
    const std::vector<Eigen::VectorXd> means(probes.size(), Eigen::VectorXd::Zero(2 * m));
    try {
      identify_gaussian(probes, means, Eigen::MatrixXd::Identity(2 * m, 2 * m));
      FAIL() << "expected under_determined";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::under_determined);
      EXPECT_NE(std::string(e.what()).find("requires " + std::to_string(2 * m + 1) + " probes"), std::string::npos);
    }
  }
}

TEST(GaussianId, CollinearProbesAreDegenerate) {
  const std::vector<Amplitudes> probes{{{0.0, 0.0}}, {{1.0, 0.0}}, {{2.0, 0.0}}};
  const auto r = resource_matrix(probes, 1);
  EXPECT_FALSE(r.invertible);
  const std::vector<Eigen::VectorXd> means(3, Eigen::VectorXd::Zero(2));
  try {
    identify_gaussian(probes, means, Eigen::MatrixXd::Identity(2, 2));
    FAIL() << "expected degenerate_probes";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_probes);
  }
}

TEST(GaussianId, DefaultResourceMatrixIsWellConditioned) {
  for (int m = 1; m <= 3; ++m) {
    const auto r = resource_matrix(default_probes(m), m);
    EXPECT_TRUE(r.invertible);
    EXPECT_EQ(r.values.rows(), 2 * m + 1);
    EXPECT_NEAR(std::abs(r.determinant), 1.0, 1e-12);
  }
}

TEST(GaussianId, NoiseDegradesGracefully) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 1e-6);
  const auto truth = random_triplet(2, rng);
  const auto probes = default_probes(2);
  auto s = simulate(truth, probes);
  for (auto& mu : s.means)
    for (Eigen::Index i = 0; i < mu.size(); ++i) mu(i) += n(rng);
  const auto id = identify_gaussian(probes, s.means, s.cov);
  EXPECT_LE(triplet_error(id.triplet, truth), 1e-4);
  EXPECT_NEAR((id.triplet.E_noise - id.triplet.E_noise.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(GaussianId, CompositionOfIdentifiedChannels) {
  std::mt19937_64 rng(21);
  const auto first = random_triplet(1, rng);
  const auto second = random_triplet(1, rng);
  const auto composed = GaussianTriplet::compose(second, first);
  // Composition by hand: x -> S2 (S1 x + D1) + D2, V -> S2 (S1 V S1ᵀ + E1) S2ᵀ + E2.
  GaussianTriplet want;
  want.S = second.S * first.S;
  want.D = second.S * first.D + second.D;
  want.E_noise = second.S * first.E_noise * second.S.transpose() + second.E_noise;
  EXPECT_LE(triplet_error(composed, want), 1e-14);
  const auto probes = default_probes(1);
  const auto s = simulate(want, probes);
  EXPECT_LE(triplet_error(identify_gaussian(probes, s.means, s.cov).triplet, want), 1e-10);
}

}  // namespace
}  // namespace mqpt
