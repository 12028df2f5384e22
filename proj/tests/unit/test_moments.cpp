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

#include "mqpt/moments.hpp"
#include "oracles.hpp"

namespace mqpt {
namespace {

constexpr int kDim = 70;

void expect_table_near(const MomentTable& table, const oracle::Op& rho, double tol) {
  for (int j = 0; j <= table.cutoff(); ++j) {
    for (int k = 0; k <= table.cutoff(); ++k) {
      const Complex want = oracle::moment(rho, j, k);
      EXPECT_NEAR(std::abs(table.at(j, k) - want), 0.0, tol) << "j=" << j << " k=" << k;
    }
  }
}

TEST(MomentTable, FlatIndexRoundTrip) {
  MomentTable t(2, 3);
  EXPECT_EQ(t.size(), 256u);
  for (std::size_t f = 0; f < t.size(); ++f) EXPECT_EQ(t.flat_of(t.index_of(f)), f);
  const MomentIndex idx({1, 2}, {3, 0});
  t.set(idx, {0.5, -1.0});
  EXPECT_EQ(t.at(idx), Complex(0.5, -1.0));
  EXPECT_FALSE(t.contains(MomentIndex({4, 0}, {0, 0})));
}

TEST(MomentTable, RejectsOutOfBoxAccess) {
  MomentTable t(1, 2);
  EXPECT_THROW(t.at(3, 0), Error);
  EXPECT_THROW(t.at(MomentIndex({0, 0}, {0, 0})), Error);
}

TEST(Moments, CoherentMatchesFockOracle) {
  for (Complex a : {Complex{0.3, 0.4}, Complex{-1.1, 0.2}, Complex{0.0, 1.5}}) {
    expect_table_near(coherent_moments({a}, 4), oracle::projector(oracle::coherent(a, kDim)), 1e-10);
  }
}

TEST(Moments, CoherentIsProductOfPowers) {
  const Complex a{0.7, -0.2};
  const auto t = coherent_moments({a}, 5);
  for (int j = 0; j <= 5; ++j)
    for (int k = 0; k <= 5; ++k) EXPECT_NEAR(std::abs(t.at(j, k) - oracle::ipow(a, j) * oracle::ipow(std::conj(a), k)), 0.0, 1e-14);
}

TEST(Moments, MultiModeCoherentFactorizes) {
  const Amplitudes a{{0.3, 0.1}, {-0.5, 0.6}};
  const auto t = coherent_moments(a, 2);
  for (std::size_t f = 0; f < t.size(); ++f) {
    const MomentIndex idx = t.index_of(f);
    Complex want = 1.0;
    for (int s = 0; s < 2; ++s) want *= oracle::ipow(a[s], idx.j[s]) * oracle::ipow(std::conj(a[s]), idx.k[s]);
    EXPECT_NEAR(std::abs(t[f] - want), 0.0, 1e-14);
  }
}

TEST(Moments, FockMatchesOracle) {
  for (int n = 0; n <= 6; ++n) expect_table_near(fock_moments(n, 4), oracle::projector(oracle::fock(n, kDim)), 1e-9);
}

TEST(Moments, ThermalMatchesOracle) {
  for (double N : {0.2, 1.0}) expect_table_near(thermal_moments(N, 4), oracle::thermal(N, 200), 1e-8);
}

TEST(Moments, SqueezedVacuumMatchesOracle) {
  for (double r : {0.1, 0.4}) {
    expect_table_near(gaussian_moments(GaussianState::squeezed_vacuum(r), 4),
                      oracle::projector(oracle::squeezed_vacuum(r, 120)), 1e-9);
  }
}

TEST(Moments, GaussianOfCoherentEqualsCoherent) {
  const Amplitudes a{{0.4, -0.9}};
  const auto g = gaussian_moments(GaussianState::coherent(a), 4);
  const auto c = coherent_moments(a, 4);
  for (std::size_t f = 0; f < g.size(); ++f) EXPECT_NEAR(std::abs(g[f] - c[f]), 0.0, 1e-12);
}

TEST(Moments, GaussianOfThermalEqualsThermal) {
  const auto g = gaussian_moments(GaussianState::thermal(0.8), 4);
  const auto t = thermal_moments(0.8, 4);
  for (std::size_t f = 0; f < g.size(); ++f) EXPECT_NEAR(std::abs(g[f] - t[f]), 0.0, 1e-12);
}

TEST(Moments, HermitianSymmetry) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Vector2d mean(u(rng), u(rng));
    Eigen::Matrix2d A;
    A << u(rng), u(rng), u(rng), u(rng);
    const Eigen::Matrix2d cov = Eigen::Matrix2d::Identity() / 4.0 + A * A.transpose() / 5.0;
    const auto t = gaussian_moments(GaussianState(mean, cov), 3);
    for (std::size_t f = 0; f < t.size(); ++f) {
      const MomentIndex idx = t.index_of(f);
      EXPECT_NEAR(std::abs(t.at(idx.swapped()) - std::conj(t[f])), 0.0, 1e-13);
    }
    EXPECT_EQ(t.at(0, 0), Complex(1.0));
  }
}

TEST(Moments, LowMomentsUseVacuumOffset) {
  const Complex a{0.6, -1.3};
  const auto low = gaussian_low_moments(GaussianState::coherent({a}));
  ASSERT_EQ(low.size(), 1u);
  EXPECT_NEAR(std::abs(low[0].m11 - std::norm(a)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(low[0].m10 - a), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(low[0].m20 - a * a), 0.0, 1e-14);
}

TEST(Moments, LowMomentsAgreeWithFullTable) {
  const auto state = GaussianState::squeezed_vacuum(0.3);
  const auto low = gaussian_low_moments(state);
  const auto t = gaussian_moments(state, 2);
  EXPECT_NEAR(std::abs(low[0].m11 - t.at(1, 1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(low[0].m20 - t.at(2, 0)), 0.0, 1e-14);
}

TEST(Moments, ApplyIdentityTensorIsNoOp) {
  const auto in = coherent_moments({{0.2, 0.9}}, 3);
  const auto out = apply_tensor(ProcessTensor::identity(1, 3, 3), in);
  for (std::size_t f = 0; f < in.size(); ++f) EXPECT_EQ(out[f], in[f]);
}

TEST(Moments, ApplyTensorIsLinear) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  ProcessTensor t(1, 2, 3);
  for (std::size_t o = 0; o < t.out_box().size(); ++o)
    for (std::size_t i = 0; i < t.in_box().size(); ++i) t(o, i) = Complex(n(rng), n(rng));
  const auto x = coherent_moments({{0.5, 0.1}}, 3);
  const auto y = thermal_moments(0.7, 3);
  MomentTable mix(1, 3);
  const Complex a{0.3, -2.0}, b{1.5, 0.5};
  for (std::size_t f = 0; f < mix.size(); ++f) mix[f] = a * x[f] + b * y[f];
  const auto lhs = apply_tensor(t, mix);
  const auto tx = apply_tensor(t, x);
  const auto ty = apply_tensor(t, y);
  for (std::size_t f = 0; f < lhs.size(); ++f) EXPECT_NEAR(std::abs(lhs[f] - (a * tx[f] + b * ty[f])), 0.0, 1e-12);
}

TEST(Moments, ApplyTensorChecksModes) {
  EXPECT_THROW(apply_tensor(ProcessTensor::identity(2, 2, 2), coherent_moments({{0.1, 0.0}}, 2)), Error);
}

TEST(Moments, RejectsBadInputs) {
  EXPECT_THROW(fock_moments(-1, 3), Error);
  EXPECT_THROW(thermal_moments(-0.5, 3), Error);
}

}  // namespace
}  // namespace mqpt
