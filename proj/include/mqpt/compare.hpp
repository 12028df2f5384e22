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

#ifndef MQPT_COMPARE_HPP
#define MQPT_COMPARE_HPP

#include <cstddef>

#include "mqpt/process_tensor.hpp"

namespace mqpt {

struct TensorComparison {
  double max_abs_error = 0.0;
  double frobenius_error = 0.0;
  MomentIndex worst_out;
  MomentIndex worst_in;
  /// Shared box actually compared.
  int cutoff_out = 0;
  int cutoff_in = 0;
  std::size_t entries = 0;
};

/// Compares a and b over the overlap of their index boxes. Ties for the
/// worst entry keep the first in flat order. Throws dimension_mismatch when
/// the mode counts differ (the boxes are then disjoint).
TensorComparison compare_tensors(const ProcessTensor& a, const ProcessTensor& b);

}  // namespace mqpt

#endif  // MQPT_COMPARE_HPP
