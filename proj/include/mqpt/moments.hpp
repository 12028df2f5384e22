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

#ifndef MQPT_MOMENTS_HPP
#define MQPT_MOMENTS_HPP

#include <cstddef>
#include <vector>

#include "mqpt/gaussian.hpp"
#include "mqpt/moment_table.hpp"
#include "mqpt/process_tensor.hpp"

namespace mqpt {

inline constexpr int kDefaultCutoff = 6;

/// Largest moment-table box gaussian_moments will populate.
inline constexpr std::size_t kMaxGaussianTableSize = std::size_t{1} << 24;

/// M_jk = prod_s alpha_s^{j_s} conj(alpha_s)^{k_s}.
MomentTable coherent_moments(const Amplitudes& alpha, int cutoff = kDefaultCutoff);

/// Fock state |n>: M_jk = delta_jk n!/(n-j)! for j <= n.
MomentTable fock_moments(int n, int cutoff = kDefaultCutoff);

/// Thermal state of mean photon number N: M_jk = delta_jk j! N^j.
MomentTable thermal_moments(double mean_photons, int cutoff = kDefaultCutoff);

/// All moments of a Gaussian state from its P-function mean and covariance
/// V - I/4 (formal Isserlis expansion, valid for non-positive V - I/4 too).
/// Throws order_unsupported when (cutoff+1)^(2m) exceeds kMaxGaussianTableSize.
MomentTable gaussian_moments(const GaussianState& state, int cutoff = kDefaultCutoff);

struct LowMoments {
  Complex m10;
  Complex m11;
  Complex m20;
};

/// Per-mode (M_10, M_11, M_20) in closed form from mean and covariance.
std::vector<LowMoments> gaussian_low_moments(const GaussianState& state);

/// M_jk(out) = sum_{mn} E^{mn}_jk M_mn(in), summed over the overlap of the
/// tensor's input box and the table. The result records the summation cutoff and a
/// truncation warning when the table has support beyond the tensor's input box.
MomentTable apply_tensor(const ProcessTensor& tensor, const MomentTable& input);

}  // namespace mqpt

#endif  // MQPT_MOMENTS_HPP
