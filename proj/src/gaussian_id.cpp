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

#include "mqpt/gaussian_id.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace mqpt {

ResourceMatrix resource_matrix(const std::vector<Amplitudes>& probes, int modes) {
  if (modes < 1) throw Error(ErrorCode::invalid_argument, "resource_matrix: modes must be >= 1");
  if (probes.empty()) throw Error(ErrorCode::invalid_argument, "resource_matrix: no probes");
  const auto rows = static_cast<Eigen::Index>(probes.size());
  const Eigen::Index cols = 2 * modes + 1;
  ResourceMatrix rm;
  rm.values.resize(rows, cols);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const Amplitudes& probe = probes[static_cast<std::size_t>(k)];
    if (static_cast<int>(probe.size()) != modes) {
      throw Error(ErrorCode::dimension_mismatch, "resource_matrix: probe " + std::to_string(k) + " has " +
                                                     std::to_string(probe.size()) + " modes, expected " +
                                                     std::to_string(modes));
    }
    rm.values.row(k).head(2 * modes) = quadrature_means(probe).transpose();
    rm.values(k, 2 * modes) = 1.0;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(rm.values);
  const auto& sv = svd.singularValues();
  const double smallest = rows < cols ? 0.0 : sv(sv.size() - 1);
  rm.condition_number = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  rm.determinant = rows == cols ? rm.values.determinant() : std::numeric_limits<double>::quiet_NaN();
  rm.invertible = rm.condition_number <= kMaxResourceCondition;
  return rm;
}

std::vector<Amplitudes> default_probes(int modes) {
  if (modes < 1) throw Error(ErrorCode::invalid_argument, "default_probes: modes must be >= 1");
  std::vector<Amplitudes> probes;
  probes.emplace_back(static_cast<std::size_t>(modes), Complex{});
  for (int s = 0; s < modes; ++s) {
    for (const Complex axis : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
      Amplitudes a(static_cast<std::size_t>(modes), Complex{});
      a[s] = axis;
      probes.push_back(std::move(a));
    }
  }
  return probes;
}

GaussianIdentification identify_gaussian(const std::vector<Amplitudes>& probes,
                                         const std::vector<Eigen::VectorXd>& output_means,
                                         const Eigen::MatrixXd& output_cov) {
  if (probes.empty()) throw Error(ErrorCode::invalid_argument, "identify_gaussian: no probes");
  const int modes = static_cast<int>(probes.front().size());
  if (modes < 1) throw Error(ErrorCode::invalid_argument, "identify_gaussian: probes have no modes");
  const int dim = 2 * modes;
  const auto needed = static_cast<std::size_t>(dim + 1);
  if (probes.size() < needed) {
    throw Error(ErrorCode::under_determined, "identify_gaussian: requires " + std::to_string(needed) +
                                                 " probes for " + std::to_string(modes) + " mode(s), got " +
                                                 std::to_string(probes.size()));
  }
  if (output_means.size() != probes.size()) {
    throw Error(ErrorCode::dimension_mismatch, "identify_gaussian: " + std::to_string(probes.size()) +
                                                   " probes but " + std::to_string(output_means.size()) +
                                                   " output means");
  }
  if (output_cov.rows() != dim || output_cov.cols() != dim) {
    throw Error(ErrorCode::dimension_mismatch,
                "identify_gaussian: output covariance must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  const ResourceMatrix rm = resource_matrix(probes, modes);
  if (!rm.invertible) {
    std::ostringstream os;
    os.precision(3);
    os << "identify_gaussian: probe set is degenerate (collinear quadrature means), resource condition number "
       << rm.condition_number;
    throw Error(ErrorCode::degenerate_probes, os.str());
  }

  Eigen::MatrixXd targets(static_cast<Eigen::Index>(probes.size()), dim);
  for (std::size_t k = 0; k < output_means.size(); ++k) {
    if (output_means[k].size() != dim) {
      throw Error(ErrorCode::dimension_mismatch, "identify_gaussian: output mean " + std::to_string(k) +
                                                     " has length " + std::to_string(output_means[k].size()));
    }
    targets.row(static_cast<Eigen::Index>(k)) = output_means[k].transpose();
  }
  // Column j of the solution is (row j of S, D_j).
  const Eigen::MatrixXd solution = probes.size() == needed ? Eigen::MatrixXd(rm.values.partialPivLu().solve(targets))
                                                           : Eigen::MatrixXd(rm.values.colPivHouseholderQr().solve(targets));

  GaussianTriplet t;
  t.S = solution.topRows(dim).transpose();
  t.D = solution.row(dim).transpose();
  Eigen::MatrixXd noise = output_cov - t.S * t.S.transpose() / 4.0;
  t.E_noise = (noise + noise.transpose()) / 2.0;
  return {std::move(t), rm.condition_number};
}

}  // namespace mqpt
