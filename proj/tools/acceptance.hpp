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

#ifndef MQPT_TOOLS_ACCEPTANCE_HPP
#define MQPT_TOOLS_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mqpt/serialization.hpp"

namespace mqpt::acceptance {

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Wall-clock checks report only pass/fail in json().
  bool timing = false;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;

  bool passed() const;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<Criterion> criteria;
  /// Wall time of the whole suite; not part of json().
  double seconds = 0.0;

  bool passed() const;
  Json json() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Runs every acceptance criterion. Deterministic for a given seed.
Report run(std::uint64_t seed = kDefaultSeed);

/// "PASS [3] gaussian identification: worst 2.1e-15 <= 1e-10 ..." one line.
std::string summary_line(const Criterion& criterion);

}  // namespace mqpt::acceptance

#endif  // MQPT_TOOLS_ACCEPTANCE_HPP
