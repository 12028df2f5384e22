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

#ifndef MQPT_EXPERIMENT_HPP
#define MQPT_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqpt/processes.hpp"
#include "mqpt/serialization.hpp"
#include "mqpt/tomography.hpp"

namespace mqpt {

enum class ExperimentKind { tomography, gaussian_id, catalog_dump, diagnostics };
enum class OutputFormat { json, csv };

std::string_view to_string(ExperimentKind kind) noexcept;

/// Input state for the diagnostics experiment.
struct StateConfig {
  /// coherent | fock | thermal | squeezed_vacuum
  std::string kind;
  Complex alpha;
  int n = 0;
  double mean_photons = 0.0;
  double r = 0.0;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::tomography;
  std::optional<ProcessSpec> process;
  SamplingPlan plan;
  int cutoff_out = 4;
  int cutoff_in = 4;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  /// Empty means default_probes(modes).
  std::vector<Amplitudes> probes;
  std::optional<StateConfig> state;
  std::string output_path;
  OutputFormat format = OutputFormat::json;
};

/// Reads a .json or .toml file into a JSON document.
Json load_config_file(const std::string& path);

/// Sets `dotted.path` to value. The value is parsed as JSON when possible,
/// otherwise stored as a string.
void apply_override(Json& config, const std::string& dotted_path, const std::string& value);

/// Validates and converts; errors carry the offending field path.
ExperimentConfig parse_config(const Json& config);

struct RunReport {
  Json json;
  /// Estimated or catalog tensor, kept for CSV output.
  std::optional<ProcessTensor> tensor;
  double seconds = 0.0;

  std::string render(OutputFormat format) const;
};

/// Runs the experiment and writes the rendered report to output_path when set.
RunReport run(const ExperimentConfig& config);

}  // namespace mqpt

#endif  // MQPT_EXPERIMENT_HPP
