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

#include "mqpt/nonclassicality.hpp"

#include <cmath>
#include <string>

namespace mqpt {

namespace {

void require_single_mode(const MomentTable& table, int order, const char* what) {
  if (table.modes() != 1) {
    throw Error(ErrorCode::dimension_mismatch, std::string(what) + ": needs a single-mode table");
  }
  if (table.cutoff() < order) {
    throw Error(ErrorCode::invalid_argument,
                std::string(what) + ": needs moments up to order " + std::to_string(order) + ", table cutoff is " +
                    std::to_string(table.cutoff()));
  }
}

double photon_number(const MomentTable& table, const char* what) {
  const double m11 = table.at(1, 1).real();
  if (!(m11 > 0.0)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": undefined for vacuum (M_11 = 0)");
  }
  return m11;
}

}  // namespace

double mandel_q(const MomentTable& table) {
  require_single_mode(table, 2, "mandel_q");
  const double m11 = photon_number(table, "mandel_q");
  const double m22 = table.at(2, 2).real();
  return (m22 - m11 * m11) / m11;
}

double q_after_nla(double g, double p_succ, const MomentTable& input) {
  require_single_mode(input, 2, "q_after_nla");
  if (!(g > 1.0)) throw Error(ErrorCode::invalid_argument, "q_after_nla: gain g must be > 1");
  if (!(p_succ >= 0.0)) throw Error(ErrorCode::invalid_argument, "q_after_nla: p_succ must be >= 0");
  const double m11 = photon_number(input, "q_after_nla");
  const double m22 = input.at(2, 2).real();
  return g * g / m11 * (m22 - p_succ * m11 * m11);
}

double quadrature_variance_x(const MomentTable& table) {
  require_single_mode(table, 2, "quadrature_variance_x");
  const double m10 = table.at(1, 0).real();
  return 0.25 * (1.0 + 2.0 * table.at(1, 1).real() + 2.0 * table.at(2, 0).real()) - m10 * m10;
}

double decoherence_variance(double n_bath, double gamma, double tau) {
  if (!(n_bath >= 0.0)) throw Error(ErrorCode::invalid_argument, "decoherence_variance: N must be >= 0");
  if (!(gamma > 0.0)) throw Error(ErrorCode::invalid_argument, "decoherence_variance: gamma must be > 0");
  if (!(tau >= 0.0)) throw Error(ErrorCode::invalid_argument, "decoherence_variance: tau must be >= 0");
  return 0.25 + 0.5 * n_bath * (1.0 - std::exp(-2.0 * gamma * tau));
}

DiagnosticReport diagnose(const MomentTable& table) {
  DiagnosticReport report;
  report.quadrature_variance_x = quadrature_variance_x(table);
  report.squeezed_x = report.quadrature_variance_x < 0.25;
  if (table.at(1, 1).real() > 0.0) {
    report.mandel_q = mandel_q(table);
    report.sub_poissonian = *report.mandel_q < 0.0;
  }
  return report;
}

}  // namespace mqpt
