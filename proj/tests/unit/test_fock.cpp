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

#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "mqpt/compare.hpp"
#include "mqpt/fock.hpp"
#include "mqpt/processes.hpp"
#include "oracles.hpp"

namespace mqpt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FockTensor subtraction(int L) {
  FockTensor f(L);
  for (int m = 1; m <= L; ++m)
    for (int n = 1; n <= L; ++n) f.set(m - 1, n - 1, m, n, std::sqrt(static_cast<double>(m * n)));
  return f;
}

// Random map whose outputs stay inside the truncated space.
FockTensor random_fock(int L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  FockTensor f(L);
  for (int j = 0; j <= L; ++j)
    for (int k = 0; k <= L; ++k)
      for (int m = 0; m <= L; ++m)
        for (int q = 0; q <= L; ++q) f.set(j, k, m, q, Complex(n(rng), n(rng)));
  return f;
}

double max_diff(const FockTensor& a, const FockTensor& b) {
  double e = 0.0;
  const int L = a.cutoff();
  for (int j = 0; j <= L; ++j)
    for (int k = 0; k <= L; ++k)
      for (int m = 0; m <= L; ++m)
        for (int n = 0; n <= L; ++n) e = std::max(e, std::abs(a.at(j, k, m, n) - b.at(j, k, m, n)));
  return e;
}

// rho_jk = sum_l (-1)^l M_{j+l,k+l} / (l! sqrt(j! k!)) inverted on both sides of the map.
FockTensor closed_form_inverse(const ProcessTensor& t, int L) {
  using oracle::factorial;
  FockTensor f(L);
  for (int j = 0; j <= L; ++j)
    for (int k = 0; k <= L; ++k)
      for (int m = 0; m <= L; ++m)
        for (int n = 0; n <= L; ++n) {
          Complex sum = 0.0;
          for (int l = 0; j + l <= L && k + l <= L; ++l)
            for (int s = 0; s <= std::min(m, n); ++s) {
              sum += (l % 2 ? -1.0 : 1.0) / (factorial(l) * factorial(s)) * t.at(j + l, k + l, m - s, n - s);
            }
          f.set(j, k, m, n, sum * std::sqrt(factorial(m) * factorial(n) / (factorial(j) * factorial(k))));
        }
  return f;
}

TEST(Fock, IdentityMapsToIdentity) {
  const auto conv = fock_to_moment(FockTensor::identity(12), 4, 4);
  EXPECT_LE(compare_tensors(conv.tensor, ProcessTensor::identity(1, 4, 4)).max_abs_error, 1e-9);
  EXPECT_LE(conv.tail_estimate, 1e-9);
}

TEST(Fock, SubtractionMatchesCatalog) {
  const auto conv = fock_to_moment(subtraction(12), 4, 5);
  EXPECT_LE(compare_tensors(conv.tensor, catalog_tensor(process::PhotonSub{}, 4, 5)).max_abs_error, 1e-9);
}

TEST(Fock, RoundTripRandomTensor) {
  for (int L : {3, 6}) {
    const auto f = random_fock(L, 100 + L);
    const auto moments = fock_to_moment(f, L, L, kInf).tensor;
    EXPECT_LE(max_diff(moment_to_fock(moments, L), f), 1e-9) << "L=" << L;
  }
}

TEST(Fock, BackSubstitutionAgreesWithClosedForm) {
  const int L = 5;
  const auto moments = fock_to_moment(random_fock(L, 7), L, L, kInf).tensor;
  EXPECT_LE(max_diff(moment_to_fock(moments, L), closed_form_inverse(moments, L)), 1e-9);
}

TEST(Fock, AttenuationFromKrausElements) {
  const int L = 12;
  const double eta = 0.6;
  FockTensor f(L);
  for (int m = 0; m <= L; ++m)
    for (int n = 0; n <= L; ++n)
      for (int l = 0; l <= std::min(m, n); ++l)
        f.set(m - l, n - l, m, n,
              std::sqrt(oracle::binomial(m, l) * oracle::binomial(n, l)) * std::pow(eta, m + n - 2 * l) *
                  std::pow(1 - eta * eta, l));
  const auto conv = fock_to_moment(f, 4, 4);
  EXPECT_LE(compare_tensors(conv.tensor, catalog_tensor(process::Attenuation{eta}, 4, 4)).max_abs_error, 1e-9);
}

TEST(Fock, TailAboveToleranceRaisesTruncation) {
  try {
    fock_to_moment(random_fock(4, 3), 4, 4);
    FAIL() << "expected truncation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::truncation);
  }
}

TEST(Fock, CutoffsBeyondFockSpaceAreRejected) {
  try {
    fock_to_moment(FockTensor::identity(3), 4, 2);
    FAIL() << "expected dimension_mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
  EXPECT_THROW(moment_to_fock(ProcessTensor::identity(1, 2, 2), 3), Error);
  EXPECT_THROW(moment_to_fock(ProcessTensor::identity(2, 3, 3), 3), Error);
}

}  // namespace
}  // namespace mqpt
