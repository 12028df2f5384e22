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

#include <algorithm>
#include <cmath>
#include <string>

#include "mqpt/error.hpp"
#include "mqpt/gaussian.hpp"
#include "mqpt/moment_table.hpp"
#include "mqpt/process_tensor.hpp"

namespace mqpt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::order_unsupported: return "order_unsupported";
    case ErrorCode::ill_conditioned: return "ill_conditioned";
    case ErrorCode::under_determined: return "under_determined";
    case ErrorCode::degenerate_probes: return "degenerate_probes";
    case ErrorCode::truncation: return "truncation";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::no_closed_form: return "no_closed_form";
    case ErrorCode::config: return "config_error";
    case ErrorCode::verification: return "verification_failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// IndexBox

IndexBox::IndexBox(int dims, int extent) : dims_(dims), extent_(extent), size_(1) {
  if (dims < 0 || extent < 1) {
    throw Error(ErrorCode::invalid_argument, "index box needs dims >= 0 and extent >= 1");
  }
  for (int d = 0; d < dims; ++d) {
    if (size_ > (std::size_t{1} << 40) / static_cast<std::size_t>(extent)) {
      throw Error(ErrorCode::order_unsupported, "index box too large to allocate densely");
    }
    size_ *= static_cast<std::size_t>(extent);
  }
}

std::size_t IndexBox::flatten(std::span<const int> digits) const {
  std::size_t flat = 0;
  for (int d = 0; d < dims_; ++d) {
    flat = flat * static_cast<std::size_t>(extent_) + static_cast<std::size_t>(digits[d]);
  }
  return flat;
}

void IndexBox::unflatten(std::size_t flat, std::span<int> digits) const {
  for (int d = dims_ - 1; d >= 0; --d) {
    digits[d] = static_cast<int>(flat % static_cast<std::size_t>(extent_));
    flat /= static_cast<std::size_t>(extent_);
  }
}

// ---------------------------------------------------------------------------
// MomentIndex / MomentTable

MomentIndex::MomentIndex(std::vector<int> j_, std::vector<int> k_) : j(std::move(j_)), k(std::move(k_)) {
  if (j.size() != k.size() || j.empty()) {
    throw Error(ErrorCode::invalid_argument, "moment index needs equal-length, non-empty j and k");
  }
  for (std::size_t s = 0; s < j.size(); ++s) {
    if (j[s] < 0 || k[s] < 0) {
      throw Error(ErrorCode::invalid_argument, "moment index entries must be non-negative");
    }
  }
}

namespace {

std::vector<int> digits_of(const MomentIndex& index) {
  std::vector<int> digits(index.j);
  digits.insert(digits.end(), index.k.begin(), index.k.end());
  return digits;
}

MomentIndex index_from_digits(const std::vector<int>& digits, int modes) {
  return MomentIndex(std::vector<int>(digits.begin(), digits.begin() + modes),
                     std::vector<int>(digits.begin() + modes, digits.end()));
}

bool within(const MomentIndex& index, int modes, int cutoff) {
  if (index.modes() != modes) return false;
  for (int s = 0; s < modes; ++s) {
    if (index.j[s] > cutoff || index.k[s] > cutoff) return false;
  }
  return true;
}

}  // namespace

MomentTable::MomentTable(int modes, int cutoff)
    : modes_(modes), cutoff_(cutoff), box_(2 * std::max(modes, 1), std::max(cutoff, 0) + 1) {
  if (modes < 1) throw Error(ErrorCode::invalid_argument, "moment table needs at least one mode");
  if (cutoff < 0) throw Error(ErrorCode::invalid_argument, "moment table cutoff must be non-negative");
  data_.assign(box_.size(), Complex{});
}

bool MomentTable::contains(const MomentIndex& index) const noexcept {
  return within(index, modes_, cutoff_);
}

std::size_t MomentTable::flat_of(const MomentIndex& index) const {
  if (index.modes() != modes_) {
    throw Error(ErrorCode::dimension_mismatch,
                "moment index has " + std::to_string(index.modes()) + " modes, table has " +
                    std::to_string(modes_));
  }
  if (!contains(index)) {
    throw Error(ErrorCode::invalid_argument,
                "moment index outside table cutoff " + std::to_string(cutoff_));
  }
  const auto digits = digits_of(index);
  return box_.flatten(digits);
}

Complex MomentTable::at(const MomentIndex& index) const { return data_[flat_of(index)]; }

void MomentTable::set(const MomentIndex& index, Complex value) { data_[flat_of(index)] = value; }

MomentIndex MomentTable::index_of(std::size_t flat) const {
  std::vector<int> digits(static_cast<std::size_t>(box_.dims()));
  box_.unflatten(flat, digits);
  return index_from_digits(digits, modes_);
}

int MomentTable::support(double tol) const {
  int order = -1;
  std::vector<int> digits(static_cast<std::size_t>(box_.dims()));
  for (std::size_t f = 0; f < data_.size(); ++f) {
    if (std::abs(data_[f]) <= tol) continue;
    box_.unflatten(f, digits);
    order = std::max(order, *std::max_element(digits.begin(), digits.end()));
  }
  return order;
}

// ---------------------------------------------------------------------------
// ProcessTensor

ProcessTensor::ProcessTensor(int modes, int cutoff_out, int cutoff_in)
    : modes_(modes),
      out_box_(2 * std::max(modes, 1), std::max(cutoff_out, 0) + 1),
      in_box_(2 * std::max(modes, 1), std::max(cutoff_in, 0) + 1) {
  if (modes < 1) throw Error(ErrorCode::invalid_argument, "process tensor needs at least one mode");
  if (cutoff_out < 0 || cutoff_in < 0) {
    throw Error(ErrorCode::invalid_argument, "process tensor cutoffs must be non-negative");
  }
  if (out_box_.size() > (std::size_t{1} << 28) / in_box_.size()) {
    throw Error(ErrorCode::order_unsupported, "process tensor box too large to store densely");
  }
  data_.assign(out_box_.size() * in_box_.size(), Complex{});
}

ProcessTensor ProcessTensor::identity(int modes, int cutoff_out, int cutoff_in) {
  ProcessTensor t(modes, cutoff_out, cutoff_in);
  const int shared = std::min(cutoff_out, cutoff_in);
  IndexBox shared_box(2 * modes, shared + 1);
  std::vector<int> digits(static_cast<std::size_t>(2 * modes));
  for (std::size_t f = 0; f < shared_box.size(); ++f) {
    shared_box.unflatten(f, digits);
    t(t.out_box_.flatten(digits), t.in_box_.flatten(digits)) = 1.0;
  }
  return t;
}

bool ProcessTensor::contains(const MomentIndex& out, const MomentIndex& in) const noexcept {
  return within(out, modes_, cutoff_out()) && within(in, modes_, cutoff_in());
}

Complex ProcessTensor::at(const MomentIndex& out, const MomentIndex& in) const {
  if (out.modes() != modes_ || in.modes() != modes_) {
    throw Error(ErrorCode::dimension_mismatch, "tensor index mode count mismatch");
  }
  if (!contains(out, in)) throw Error(ErrorCode::invalid_argument, "tensor index outside cutoffs");
  return (*this)(out_box_.flatten(digits_of(out)), in_box_.flatten(digits_of(in)));
}

void ProcessTensor::set(const MomentIndex& out, const MomentIndex& in, Complex value) {
  if (out.modes() != modes_ || in.modes() != modes_) {
    throw Error(ErrorCode::dimension_mismatch, "tensor index mode count mismatch");
  }
  if (!contains(out, in)) throw Error(ErrorCode::invalid_argument, "tensor index outside cutoffs");
  (*this)(out_box_.flatten(digits_of(out)), in_box_.flatten(digits_of(in))) = value;
}

MomentIndex ProcessTensor::out_index(std::size_t flat) const {
  std::vector<int> digits(static_cast<std::size_t>(out_box_.dims()));
  out_box_.unflatten(flat, digits);
  return index_from_digits(digits, modes_);
}

MomentIndex ProcessTensor::in_index(std::size_t flat) const {
  std::vector<int> digits(static_cast<std::size_t>(in_box_.dims()));
  in_box_.unflatten(flat, digits);
  return index_from_digits(digits, modes_);
}

void ProcessTensor::flush_small(double threshold) {
  for (auto& v : data_) {
    if (std::abs(v) < threshold) v = Complex{};
  }
}

// ---------------------------------------------------------------------------
// Gaussian states and triplets

GaussianState::GaussianState(Eigen::VectorXd mean_, Eigen::MatrixXd cov_)
    : mean(std::move(mean_)), cov(std::move(cov_)) {
  const auto n = mean.size();
  if (n == 0 || n % 2 != 0) {
    throw Error(ErrorCode::dimension_mismatch, "Gaussian mean must have even, non-zero length 2m");
  }
  if (cov.rows() != n || cov.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch, "Gaussian covariance must be 2m x 2m");
  }
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "Gaussian covariance must be symmetric");
  }
}

GaussianState GaussianState::vacuum(int modes) {
  if (modes < 1) throw Error(ErrorCode::invalid_argument, "vacuum needs at least one mode");
  return {Eigen::VectorXd::Zero(2 * modes), Eigen::MatrixXd::Identity(2 * modes, 2 * modes) / 4.0};
}

GaussianState GaussianState::coherent(const Amplitudes& alpha) {
  if (alpha.empty()) throw Error(ErrorCode::invalid_argument, "coherent state needs at least one mode");
  const auto n = static_cast<Eigen::Index>(2 * alpha.size());
  return {quadrature_means(alpha), Eigen::MatrixXd::Identity(n, n) / 4.0};
}

GaussianState GaussianState::thermal(double mean_photons, int modes) {
  if (!(mean_photons >= 0.0)) throw Error(ErrorCode::invalid_argument, "thermal N must be >= 0");
  auto state = vacuum(modes);
  state.cov *= (2.0 * mean_photons + 1.0);
  return state;
}

GaussianState GaussianState::squeezed_vacuum(double r) {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
  cov(0, 0) = std::exp(-2.0 * r) / 4.0;
  cov(1, 1) = std::exp(2.0 * r) / 4.0;
  return {Eigen::VectorXd::Zero(2), cov};
}

Eigen::VectorXd quadrature_means(const Amplitudes& alpha) {
  Eigen::VectorXd mean(static_cast<Eigen::Index>(2 * alpha.size()));
  for (std::size_t s = 0; s < alpha.size(); ++s) {
    mean(static_cast<Eigen::Index>(2 * s)) = alpha[s].real();
    mean(static_cast<Eigen::Index>(2 * s + 1)) = alpha[s].imag();
  }
  return mean;
}

void GaussianTriplet::validate() const {
  const auto n = D.size();
  if (n == 0 || n % 2 != 0) throw Error(ErrorCode::dimension_mismatch, "triplet D must have length 2m");
  if (S.rows() != n || S.cols() != n) throw Error(ErrorCode::dimension_mismatch, "triplet S must be 2m x 2m");
  if (E_noise.rows() != n || E_noise.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch, "triplet E_noise must be 2m x 2m");
  }
  if ((E_noise - E_noise.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "triplet E_noise must be symmetric within 1e-12");
  }
}

GaussianTriplet GaussianTriplet::identity(int modes) {
  const int n = 2 * modes;
  return {Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
}

GaussianTriplet GaussianTriplet::compose(const GaussianTriplet& second, const GaussianTriplet& first) {
  return {second.S * first.S, second.S * first.E_noise * second.S.transpose() + second.E_noise,
          second.S * first.D + second.D};
}

}  // namespace mqpt
