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

#ifndef MQPT_PROCESSES_HPP
#define MQPT_PROCESSES_HPP

#include <optional>
#include <string>
#include <variant>

#include "mqpt/gaussian.hpp"
#include "mqpt/moment_table.hpp"
#include "mqpt/process_tensor.hpp"

namespace mqpt {

namespace process {

struct Identity {
  int modes = 1;
};

/// |alpha> -> |eta alpha>, 0 < eta < 1.
struct Attenuation {
  double eta = 1.0;
};

struct Displacement {
  Complex beta;
};

/// rho -> a^dag rho a (not trace preserving).
struct PhotonAdd {};

/// rho -> a rho a^dag (not trace preserving).
struct PhotonSub {};

/// Two-mode: (a1, a2) -> (T a1 - R a2, R a1 + T a2), T^2 + R^2 = 1.
struct BeamSplitter {
  double T = 1.0;
  double R = 0.0;
};

/// Kerr-cell cat generation |alpha> -> (|alpha> + i|-alpha>)/sqrt(2).
/// Moments treat the two branches as orthogonal: the overlap
/// exp(-2|alpha|^2) is dropped, which keeps the tensor finite.
struct CatGeneration {};

enum class NlaVacuumBranch {
  /// P|g alpha><g alpha| + (1 - P)|0><0|, so M_00 = 1.
  include,
  /// Amplified branch only, M_00 = P.
  exclude,
};

/// Probabilistic noiseless linear amplifier with gain g > 1 built from
/// `scissors` quantum-scissor units.
struct Nla {
  double g = 2.0;
  int scissors = 1;
  NlaVacuumBranch vacuum_branch = NlaVacuumBranch::include;
};

/// Damping towards a thermal bath of occupation n_bath: nu = exp(-gamma tau).
struct Decoherence {
  double n_bath = 0.0;
  double gamma = 1.0;
  double tau = 0.0;

  double nu() const;
};

struct GaussianChannel {
  GaussianTriplet triplet;
};

}  // namespace process

using ProcessSpec =
    std::variant<process::Identity, process::Attenuation, process::Displacement, process::PhotonAdd,
                 process::PhotonSub, process::BeamSplitter, process::CatGeneration, process::Nla,
                 process::Decoherence, process::GaussianChannel>;

/// Short lowercase name, e.g. "attenuation".
std::string kind_name(const ProcessSpec& spec);
int mode_count(const ProcessSpec& spec);
/// Throws invalid_argument when parameters violate their constraints.
void validate(const ProcessSpec& spec);

/// Closed-form output moment M_index(E[|alpha><alpha|]).
Complex output_moments(const ProcessSpec& spec, const Amplitudes& alpha, const MomentIndex& index);

/// Every output moment up to `cutoff` for probe |alpha>.
MomentTable output_table(const ProcessSpec& spec, const Amplitudes& alpha, int cutoff);

/// Closed-form superoperator tensor over the box (cutoff_out, cutoff_in).
/// GaussianChannel has no closed form here and throws no_closed_form.
ProcessTensor catalog_tensor(const ProcessSpec& spec, int cutoff_out, int cutoff_in);

GaussianState gaussian_apply(const GaussianTriplet& triplet, const GaussianState& state);

/// Triplet of a catalog process when it is Gaussian and trace preserving.
std::optional<GaussianTriplet> gaussian_triplet_of(const ProcessSpec& spec);

struct NlaProbability {
  double value;
  /// False when N >= 10 g |alpha| does not hold (the formula assumes N >> g|alpha|).
  bool valid;
};

/// e^{-(1-g^2)|alpha|^2} / (g^2 - 1)^N, returned raw (may exceed 1).
NlaProbability nla_success_probability(double g, int scissors, Complex alpha);

}  // namespace mqpt

#endif  // MQPT_PROCESSES_HPP
