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

#include "mqpt/moments.hpp"
#include "mqpt/nonclassicality.hpp"
#include "mqpt/processes.hpp"
#include "oracles.hpp"

namespace mqpt {
namespace {

// Var(x) with x = (a + a^dag)/2, straight from a Fock-basis density matrix.
double oracle_variance_x(const oracle::Op& rho) {
  const oracle::Op a = oracle::annihilation(static_cast<int>(rho.rows()));
  const oracle::Op x = (a + a.adjoint()) / 2.0;
  const double mean = (rho * x).trace().real();
  return (rho * x * x).trace().real() - mean * mean;
}

TEST(Nonclassicality, FockStatesAreMaximallySubPoissonian) {
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(mandel_q(fock_moments(n, 2)), -1.0) << n;
}

TEST(Nonclassicality, CoherentIsPoissonian) {
  EXPECT_NEAR(mandel_q(coherent_moments({{0.3, 1.7}}, 2)), 0.0, 1e-12);
}

TEST(Nonclassicality, ThermalQEqualsMeanPhotonNumber) {
  for (double N : {0.1, 1.0, 3.0}) EXPECT_NEAR(mandel_q(thermal_moments(N, 2)), N, 1e-12);
}

TEST(Nonclassicality, VacuumIsUndefined) {
  EXPECT_THROW(mandel_q(fock_moments(0, 2)), Error);
  const auto report = diagnose(fock_moments(0, 2));
  EXPECT_FALSE(report.mandel_q.has_value());
  EXPECT_NEAR(report.quadrature_variance_x, 0.25, 1e-15);
}

TEST(Nonclassicality, RequiresSecondOrderSingleMode) {
  EXPECT_THROW(mandel_q(coherent_moments({{0.5, 0.0}}, 1)), Error);
  EXPECT_THROW(quadrature_variance_x(coherent_moments({{0.5, 0.0}, {0.1, 0.0}}, 2)), Error);
}

TEST(Nonclassicality, QuadratureVarianceMatchesOracle) {
  for (double r : {0.0, 0.2, 0.6}) {
    const double want = oracle_variance_x(oracle::projector(oracle::squeezed_vacuum(r, 120)));
    EXPECT_NEAR(quadrature_variance_x(gaussian_moments(GaussianState::squeezed_vacuum(r), 2)), want, 1e-10);
  }
  const Complex a{0.8, -0.4};
  EXPECT_NEAR(quadrature_variance_x(coherent_moments({a}, 2)), 0.25, 1e-13);
  EXPECT_NEAR(quadrature_variance_x(fock_moments(3, 2)),
              oracle_variance_x(oracle::projector(oracle::fock(3, 10))), 1e-13);
}

TEST(Nonclassicality, QAfterNlaFormula) {
  for (double g : {1.2, 2.0}) {
    for (double mod : {0.1, 1.0}) {
      for (double p : {0.05, 0.3, 1.0}) {
        const Complex a = std::polar(mod, -1.1);
        // Moments of P|g a><g a| + (1 - P)|0><0|.
        const double m11 = p * g * g * mod * mod, m22 = p * std::pow(g * mod, 4);
        const double q = q_after_nla(g, p, coherent_moments({a}, 2));
        EXPECT_NEAR(q, (m22 - m11 * m11) / m11, 1e-12);
        EXPECT_NEAR(q, g * g * mod * mod * (1 - p), 1e-12);
        EXPECT_GE(q, -1e-15);
      }
    }
  }
  EXPECT_THROW(q_after_nla(0.8, 0.5, coherent_moments({{1.0, 0.0}}, 2)), Error);
}

TEST(Nonclassicality, DecoherenceVariance) {
  EXPECT_EQ(decoherence_variance(2.0, 1.0, 0.0), 0.25);
  EXPECT_EQ(decoherence_variance(0.0, 1.0, 3.0), 0.25);
  EXPECT_NEAR(decoherence_variance(2.0, 1.0, 50.0), 0.25 + 1.0, 1e-15);
  // Matches the propagated vacuum at every time.
  for (double tau : {0.1, 1.0, 4.0}) {
    const auto out = apply_tensor(catalog_tensor(process::Decoherence{1.5, 0.7, tau}, 2, 2), fock_moments(0, 2));
    EXPECT_NEAR(quadrature_variance_x(out), decoherence_variance(1.5, 0.7, tau), 1e-13);
  }
}

TEST(Nonclassicality, SqueezingDecaysUnderDecoherence) {
  const auto sq = gaussian_moments(GaussianState::squeezed_vacuum(0.2), 2);
  double last = 0.0;
  for (double tau : {0.0, 0.5, 2.0, 10.0}) {
    const double v = quadrature_variance_x(apply_tensor(catalog_tensor(process::Decoherence{2.0, 1.0, tau}, 2, 2), sq));
    EXPECT_GT(v, last);
    last = v;
  }
  EXPECT_NEAR(last, decoherence_variance(2.0, 1.0, 10.0), 1e-8);
}

TEST(Nonclassicality, DiagnoseFlags) {
  const auto fock = diagnose(fock_moments(2, 2));
  ASSERT_TRUE(fock.mandel_q.has_value());
  EXPECT_TRUE(fock.sub_poissonian);
  EXPECT_FALSE(fock.squeezed_x);
  const auto sq = diagnose(gaussian_moments(GaussianState::squeezed_vacuum(0.3), 2));
  EXPECT_TRUE(sq.squeezed_x);
  EXPECT_FALSE(sq.sub_poissonian);
}

}  // namespace
}  // namespace mqpt
