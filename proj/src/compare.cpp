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

#include "mqpt/compare.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mqpt {

TensorComparison compare_tensors(const ProcessTensor& a, const ProcessTensor& b) {
  if (a.modes() != b.modes()) {
    throw Error(ErrorCode::dimension_mismatch, "compare_tensors: disjoint index boxes (" +
                                                   std::to_string(a.modes()) + " vs " + std::to_string(b.modes()) +
                                                   " modes)");
  }
  TensorComparison c;
  c.cutoff_out = std::min(a.cutoff_out(), b.cutoff_out());
  c.cutoff_in = std::min(a.cutoff_in(), b.cutoff_in());
  const int modes = a.modes();
  const IndexBox out_box(2 * modes, c.cutoff_out + 1);
  const IndexBox in_box(2 * modes, c.cutoff_in + 1);
  std::vector<int> od(2 * modes), id(2 * modes);
  double sum = 0.0;
  std::size_t worst_o = 0, worst_i = 0;
  bool have_worst = false;
  for (std::size_t o = 0; o < out_box.size(); ++o) {
    out_box.unflatten(o, od);
    const std::size_t ao = a.out_box().flatten(od);
    const std::size_t bo = b.out_box().flatten(od);
    for (std::size_t i = 0; i < in_box.size(); ++i) {
      in_box.unflatten(i, id);
      const double e = std::abs(a(ao, a.in_box().flatten(id)) - b(bo, b.in_box().flatten(id)));
      sum += e * e;
      if (!have_worst || e > c.max_abs_error) {
        c.max_abs_error = e;
        worst_o = ao;
        worst_i = a.in_box().flatten(id);
        have_worst = true;
      }
    }
  }
  c.frobenius_error = std::sqrt(sum);
  c.worst_out = a.out_index(worst_o);
  c.worst_in = a.in_index(worst_i);
  c.entries = out_box.size() * in_box.size();
  return c;
}

}  // namespace mqpt
