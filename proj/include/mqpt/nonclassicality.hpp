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

#ifndef MQPT_NONCLASSICALITY_HPP
#define MQPT_NONCLASSICALITY_HPP

#include <optional>

#include "mqpt/moment_table.hpp"

namespace mqpt {

/// Q = (M_22 - M_11^2) / M_11. Needs a single-mode table with cutoff >= 2 and
/// M_11 > 0 (vacuum is rejected).
double mandel_q(const MomentTable& table);

/// Q after noiseless amplification: g^2 / M_11 (M_22 - p_succ M_11^2).
double q_after_nla(double g, double p_succ, const MomentTable& input);

/// Delta_x = (1 + 2 M_11 + 2 Re M_20) / 4 - (Re M_10)^2.
double quadrature_variance_x(const MomentTable& table);

/// 1/4 + (N/2)(1 - e^{-2 gamma tau}).
double decoherence_variance(double n_bath, double gamma, double tau);

struct DiagnosticReport {
  /// Empty when M_11 = 0.
  std::optional<double> mandel_q;
  double quadrature_variance_x = 0.0;
  bool sub_poissonian = false;
  bool squeezed_x = false;
};

DiagnosticReport diagnose(const MomentTable& table);

}  // namespace mqpt

#endif  // MQPT_NONCLASSICALITY_HPP
