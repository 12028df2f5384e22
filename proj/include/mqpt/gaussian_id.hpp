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

#ifndef MQPT_GAUSSIAN_ID_HPP
#define MQPT_GAUSSIAN_ID_HPP

#include <vector>

#include "mqpt/gaussian.hpp"

namespace mqpt {

inline constexpr double kMaxResourceCondition = 1e12;

/// Probe quadrature means with a trailing ones column; row k is
/// (xbar_1, pbar_1, ..., xbar_m, pbar_m, 1) for probe k.
struct ResourceMatrix {
  Eigen::MatrixXd values;
  /// Ratio of extreme singular values; infinity when rank deficient.
  double condition_number;
  /// NaN unless the matrix is square.
  double determinant;
  bool invertible;
};

ResourceMatrix resource_matrix(const std::vector<Amplitudes>& probes, int modes);

/// The zero probe plus a unit displacement along each quadrature axis
/// (alpha_s = 1 for x_s, alpha_s = i for p_s): 2m + 1 probes.
std::vector<Amplitudes> default_probes(int modes);

struct GaussianIdentification {
  GaussianTriplet triplet;
  double condition_number;
};

/// Solves S and D from probe means (least squares beyond 2m + 1 probes) and
/// sets E_noise = output_cov - S S^T / 4, the coherent-state covariance being
/// I/4. `output_cov` is the covariance of any one probe output.
GaussianIdentification identify_gaussian(const std::vector<Amplitudes>& probes,
                                         const std::vector<Eigen::VectorXd>& output_means,
                                         const Eigen::MatrixXd& output_cov);

}  // namespace mqpt

#endif  // MQPT_GAUSSIAN_ID_HPP
