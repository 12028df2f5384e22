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

#ifndef MQPT_SERIALIZATION_HPP
#define MQPT_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "mqpt/compare.hpp"
#include "mqpt/gaussian.hpp"
#include "mqpt/moment_table.hpp"
#include "mqpt/nonclassicality.hpp"
#include "mqpt/process_tensor.hpp"
#include "mqpt/processes.hpp"
#include "mqpt/tomography.hpp"

namespace mqpt {

using Json = nlohmann::ordered_json;

/// Entries with |value| < 1e-15 are omitted.
Json to_json(const MomentTable& table);
Json to_json(const ProcessTensor& tensor);
Json to_json(const GaussianTriplet& triplet);
Json to_json(const TensorComparison& comparison);
Json to_json(const DiagnosticReport& report);
Json to_json(const SamplingPlan& plan);
Json to_json(const ProcessSpec& spec);
Json to_json(const Eigen::MatrixXd& matrix);
Json to_json(const Eigen::VectorXd& vector);
Json to_json(Complex value);

MomentTable moment_table_from_json(const Json& json);
ProcessTensor process_tensor_from_json(const Json& json);

/// Parses a process description such as {"kind": "attenuation", "eta": 0.7}.
/// Errors are ErrorCode::config and name the offending field under `path`.
ProcessSpec process_spec_from_json(const Json& json, const std::string& path = "process");

/// Two-space indented JSON with every float printed as %.17g, non-finite
/// floats as null, and a trailing newline. Key order is insertion order.
std::string dump(const Json& json);

/// One row per stored entry: j,k,m,n,re,im. Multi-mode indices are joined
/// with ';'.
std::string tensor_csv(const ProcessTensor& tensor);

}  // namespace mqpt

#endif  // MQPT_SERIALIZATION_HPP
