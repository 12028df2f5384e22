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

#ifndef MQPT_FOCK_HPP
#define MQPT_FOCK_HPP

#include "mqpt/process_tensor.hpp"

namespace mqpt {

/// Single-mode superoperator in the Fock basis,
/// F^{mn}_{jk} = <j| E[|m><n|] |k>, for all indices up to the cutoff L.
class FockTensor {
 public:
  explicit FockTensor(int cutoff);

  static FockTensor identity(int cutoff);

  int cutoff() const noexcept { return data_.cutoff_out(); }
  Complex at(int j, int k, int m, int n) const { return data_.at(j, k, m, n); }
  void set(int j, int k, int m, int n, Complex value) { data_.set(MomentIndex(j, k), MomentIndex(m, n), value); }

  /// Raw storage: output index (j, k), input index (m, n).
  const ProcessTensor& data() const noexcept { return data_; }

 private:
  ProcessTensor data_;
};

inline constexpr double kDefaultTailTolerance = 1e-9;

struct FockConversion {
  ProcessTensor tensor;
  /// Largest contribution of the last retained l-shell over all entries.
  double tail_estimate;
};

/// Moment-basis tensor from a Fock-basis one:
///   E^{mn}_{jk} = sum_{l,s} (-1)^s / (s! l!) sqrt((j+l)!(k+l)! / ((m-s)!(n-s)!))
///                 F^{m-s,n-s}_{j+l,k+l},
/// with j + l, k + l <= L. Throws truncation when the tail estimate exceeds
/// `tolerance` (pass infinity to disable) and dimension_mismatch when a
/// cutoff exceeds L.
FockConversion fock_to_moment(const FockTensor& fock, int cutoff_out, int cutoff_in,
                              double tolerance = kDefaultTailTolerance);

/// Inverts the relation above by back-substitution: unknowns are ordered by
/// decreasing j + k, then increasing m + n, so each step divides by the
/// (l, s) = (0, 0) coefficient. Sums are truncated at L, which makes
/// fock_to_moment(moment_to_fock(T, L)) reproduce T exactly on the box.
/// Requires a single-mode tensor with both cutoffs >= L.
FockTensor moment_to_fock(const ProcessTensor& tensor, int cutoff);

}  // namespace mqpt

#endif  // MQPT_FOCK_HPP
