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

#ifndef MQPT_GAUSSIAN_HPP
#define MQPT_GAUSSIAN_HPP

#include <Eigen/Dense>

#include "mqpt/error.hpp"

namespace mqpt {

// Quadratures follow x = (a + a^dag)/2, p = (a - a^dag)/(2i), so the vacuum
// covariance is I/4 and <a> = xbar + i pbar. Vectors are ordered
// (x_1, p_1, ..., x_m, p_m).

/// Mean quadrature vector and symmetrized covariance matrix of an m-mode
/// Gaussian state. Physicality is not enforced.
struct GaussianState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  GaussianState(Eigen::VectorXd mean_, Eigen::MatrixXd cov_);

  int modes() const noexcept { return static_cast<int>(mean.size() / 2); }

  static GaussianState vacuum(int modes);
  static GaussianState coherent(const Amplitudes& alpha);
  static GaussianState thermal(double mean_photons, int modes = 1);
  /// Single-mode squeezed vacuum with V = diag(e^{-2r}, e^{2r})/4.
  static GaussianState squeezed_vacuum(double r);
};

/// Gaussian channel: mean -> S mean + D, cov -> S cov S^T + E_noise.
struct GaussianTriplet {
  Eigen::MatrixXd S;
  Eigen::MatrixXd E_noise;
  Eigen::VectorXd D;

  int modes() const noexcept { return static_cast<int>(D.size() / 2); }
  /// Checks shapes and symmetry of E_noise (1e-12); throws Error.
  void validate() const;

  static GaussianTriplet identity(int modes);
  /// Composition: `second` applied after `first`.
  static GaussianTriplet compose(const GaussianTriplet& second, const GaussianTriplet& first);
};

/// Quadrature means (xbar, pbar per mode) of a coherent amplitude vector.
Eigen::VectorXd quadrature_means(const Amplitudes& alpha);

}  // namespace mqpt

#endif  // MQPT_GAUSSIAN_HPP
