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

#include "mqpt/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace mqpt {

namespace {

class Factorials {
 public:
  explicit Factorials(int n) : values_(static_cast<std::size_t>(n + 1), 1.0) {
    for (int i = 1; i <= n; ++i) values_[i] = values_[i - 1] * static_cast<double>(i);
  }
  double operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> values_;
};

double sign(int exponent) { return exponent % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

FockTensor::FockTensor(int cutoff) : data_(1, cutoff, cutoff) {}

FockTensor FockTensor::identity(int cutoff) {
  FockTensor f(cutoff);
  for (int j = 0; j <= cutoff; ++j) {
    for (int k = 0; k <= cutoff; ++k) f.set(j, k, j, k, 1.0);
  }
  return f;
}

FockConversion fock_to_moment(const FockTensor& fock, int cutoff_out, int cutoff_in, double tolerance) {
  const int L = fock.cutoff();
  if (cutoff_out < 1 || cutoff_in < 1) throw Error(ErrorCode::invalid_argument, "fock_to_moment: cutoffs must be >= 1");
  if (cutoff_out > L || cutoff_in > L) {
    throw Error(ErrorCode::dimension_mismatch, "fock_to_moment: cutoffs (" + std::to_string(cutoff_out) + ", " +
                                                   std::to_string(cutoff_in) + ") exceed the Fock cutoff " +
                                                   std::to_string(L));
  }
  const Factorials fact(2 * L + 1);
  ProcessTensor out(1, cutoff_out, cutoff_in);
  double tail = 0.0;
  for (int j = 0; j <= cutoff_out; ++j) {
    for (int k = 0; k <= cutoff_out; ++k) {
      const int l_max = L - std::max(j, k);
      for (int m = 0; m <= cutoff_in; ++m) {
        for (int n = 0; n <= cutoff_in; ++n) {
          Complex sum{};
          for (int l = 0; l <= l_max; ++l) {
            Complex shell{};
            for (int s = 0; s <= std::min(m, n); ++s) {
              const double c = sign(s) / (fact(s) * fact(l)) *
                               std::sqrt(fact(j + l) * fact(k + l) / (fact(m - s) * fact(n - s)));
              shell += c * fock.at(j + l, k + l, m - s, n - s);
            }
            sum += shell;
            if (l == l_max) tail = std::max(tail, std::abs(shell));
          }
          out.set(MomentIndex(j, k), MomentIndex(m, n), sum);
        }
      }
    }
  }
  if (tail > tolerance) {
    std::ostringstream os;
    os.precision(3);
    os << "fock_to_moment: truncation tail " << tail << " at Fock cutoff " << L << " exceeds tolerance "
       << tolerance;
    throw Error(ErrorCode::truncation, os.str());
  }
  out.flush_small(1e-15);
  return {std::move(out), tail};
}

FockTensor moment_to_fock(const ProcessTensor& tensor, int cutoff) {
  const int L = cutoff;
  if (L < 0) throw Error(ErrorCode::invalid_argument, "moment_to_fock: Fock cutoff must be >= 0");
  if (tensor.modes() != 1) {
    throw Error(ErrorCode::dimension_mismatch, "moment_to_fock: Fock conversion is single-mode only");
  }
  if (tensor.cutoff_out() < L || tensor.cutoff_in() < L) {
    throw Error(ErrorCode::dimension_mismatch,
                "moment_to_fock: tensor cutoffs (" + std::to_string(tensor.cutoff_out()) + ", " +
                    std::to_string(tensor.cutoff_in()) + ") must be >= the Fock cutoff " + std::to_string(L));
  }
  const Factorials fact(2 * L + 1);
  FockTensor fock(L);
  // Every term on the right refers to (j+l, k+l, m-s, n-s): larger j+k, or
  // equal j+k with smaller m+n, so it is already known.
  for (int jk = 2 * L; jk >= 0; --jk) {
    for (int mn = 0; mn <= 2 * L; ++mn) {
      for (int j = std::max(0, jk - L); j <= std::min(L, jk); ++j) {
        const int k = jk - j;
        for (int m = std::max(0, mn - L); m <= std::min(L, mn); ++m) {
          const int n = mn - m;
          Complex rest = tensor.at(j, k, m, n);
          for (int l = 0; j + l <= L && k + l <= L; ++l) {
            for (int s = 0; s <= std::min(m, n); ++s) {
              if (l == 0 && s == 0) continue;
              const double c = sign(s) / (fact(s) * fact(l)) *
                               std::sqrt(fact(j + l) * fact(k + l) / (fact(m - s) * fact(n - s)));
              rest -= c * fock.at(j + l, k + l, m - s, n - s);
            }
          }
          const double lead = std::sqrt(fact(j) * fact(k) / (fact(m) * fact(n)));
          fock.set(j, k, m, n, rest / lead);
        }
      }
    }
  }
  return fock;
}

}  // namespace mqpt
