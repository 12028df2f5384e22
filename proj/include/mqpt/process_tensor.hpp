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

#ifndef MQPT_PROCESS_TENSOR_HPP
#define MQPT_PROCESS_TENSOR_HPP

#include <cstddef>
#include <vector>

#include "mqpt/moment_table.hpp"

namespace mqpt {

/// Superoperator tensor E^{mn}_{jk} in the normally-ordered moment basis:
/// M_jk(out) = sum_{mn} E^{mn}_{jk} M_mn(in).
///
/// Output indices (j, k) run over [0, cutoff_out]^m, input indices (m, n)
/// over [0, cutoff_in]^m. Storage is dense, output-major.
class ProcessTensor {
 public:
  ProcessTensor(int modes, int cutoff_out, int cutoff_in);

  static ProcessTensor identity(int modes, int cutoff_out, int cutoff_in);

  int modes() const noexcept { return modes_; }
  int cutoff_out() const noexcept { return out_box_.extent() - 1; }
  int cutoff_in() const noexcept { return in_box_.extent() - 1; }

  const IndexBox& out_box() const noexcept { return out_box_; }
  const IndexBox& in_box() const noexcept { return in_box_; }

  Complex at(const MomentIndex& out, const MomentIndex& in) const;
  Complex at(int j, int k, int m, int n) const { return at(MomentIndex(j, k), MomentIndex(m, n)); }
  void set(const MomentIndex& out, const MomentIndex& in, Complex value);

  Complex operator()(std::size_t out_flat, std::size_t in_flat) const {
    return data_[out_flat * in_box_.size() + in_flat];
  }
  Complex& operator()(std::size_t out_flat, std::size_t in_flat) {
    return data_[out_flat * in_box_.size() + in_flat];
  }

  MomentIndex out_index(std::size_t flat) const;
  MomentIndex in_index(std::size_t flat) const;
  bool contains(const MomentIndex& out, const MomentIndex& in) const noexcept;

  /// Replaces entries with |value| < threshold by exact zeros.
  void flush_small(double threshold = 1e-15);

  std::span<const Complex> values() const noexcept { return data_; }

 private:
  int modes_;
  IndexBox out_box_;
  IndexBox in_box_;
  std::vector<Complex> data_;
};

}  // namespace mqpt

#endif  // MQPT_PROCESS_TENSOR_HPP
