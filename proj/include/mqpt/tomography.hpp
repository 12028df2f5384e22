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

#ifndef MQPT_TOMOGRAPHY_HPP
#define MQPT_TOMOGRAPHY_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "mqpt/moment_table.hpp"
#include "mqpt/process_tensor.hpp"
#include "mqpt/processes.hpp"

namespace mqpt {

/// Black-box process: output moment table for the coherent probe |alpha>.
using ProbeResponse = std::function<MomentTable(const Amplitudes&)>;

/// Probe placement for estimate_tensor. Probes sit on circles
/// alpha_s = r e^{2 pi i t / angular_count} in every mode.
struct SamplingPlan {
  std::vector<double> radii;
  int angular_count = 0;
  /// Largest input index m_s, n_s extracted per mode.
  int max_order = 0;
  /// Radial coefficients fitted per band and mode (powers of r^2).
  int fit_terms = 0;
  /// Absolute noise level added to the per-circle estimate (taken from the
  /// unused DFT bins) before rows are weighted.
  double noise_floor = 1e-300;

  /// Defaults for the given order and mode count; radii are multiplied by radius_scale.
  static SamplingPlan standard(int max_order, int modes = 1, double radius_scale = 1.0);

  /// Throws invalid_argument naming the violated constraint.
  void validate() const;
};

inline constexpr double kMaxPlanCondition = 1e10;

struct Estimate {
  ProcessTensor tensor;
  /// Condition number of the column-equilibrated radial design.
  double condition_number;
};

/// Reconstructs E^{mn}_{jk} for output orders up to cutoff_out and inputs up to
/// plan.max_order from probe responses. The response must return tables with
/// cutoff >= cutoff_out and `modes` modes.
///
/// Per output index the samples on each circle are Fourier transformed; band
/// d = m - n is then a power series in r^2 fitted by weighted least squares,
/// with the truncation order picked per band from the residual.
Estimate estimate_tensor(const ProbeResponse& response, int modes, const SamplingPlan& plan, int cutoff_out);

/// Exact closed-form response of a catalog process.
ProbeResponse process_response(const ProcessSpec& spec, int cutoff);

/// Adds complex Gaussian noise of standard deviation sigma (1 + |M|) to every
/// moment. The noise depends only on (seed, alpha, entry), so repeated or
/// reordered queries return identical values.
ProbeResponse noisy_response(ProbeResponse base, double sigma, std::uint64_t seed);

}  // namespace mqpt

#endif  // MQPT_TOMOGRAPHY_HPP
