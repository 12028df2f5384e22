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

#ifndef MQPT_ERROR_HPP
#define MQPT_ERROR_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mqpt {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  order_unsupported,
  ill_conditioned,
  under_determined,
  degenerate_probes,
  truncation,
  non_finite,
  no_closed_form,
  config,
  verification,
};

/// Stable machine-readable name, e.g. "ill_conditioned".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mqpt

#endif  // MQPT_ERROR_HPP
