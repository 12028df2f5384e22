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

#include "mqpt/processes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mqpt/moments.hpp"

namespace mqpt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Complex ipow(Complex base, int exponent) {
  Complex result = 1.0;
  for (int e = 0; e < exponent; ++e) result *= base;
  return result;
}

double rpow(double base, int exponent) {
  double result = 1.0;
  for (int e = 0; e < exponent; ++e) result *= base;
  return result;
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  return result;
}

Complex monomial(Complex alpha, int j, int k) { return ipow(alpha, j) * ipow(std::conj(alpha), k); }

Complex cat_coefficient(int j, int k) {
  const double sj = (j % 2 == 0) ? 1.0 : -1.0;
  const double sk = (k % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * Complex(1.0 + sj * sk, sj - sk);
}

// Single-mode tensor elements E^{mn}_{jk} for the closed-form catalog.
Complex displacement_element(const process::Displacement& p, int j, int k, int m, int n) {
  if (m > j || n > k) return 0.0;
  return binomial(j, m) * binomial(k, n) * ipow(p.beta, j - m) * ipow(std::conj(p.beta), k - n);
}

Complex nla_element(const process::Nla& p, int j, int k, int m, int n) {
  if (j == 0 && k == 0 && p.vacuum_branch == process::NlaVacuumBranch::include) {
    return (m == 0 && n == 0) ? 1.0 : 0.0;
  }
  const int l = m - j;
  if (l < 0 || n - k != l) return 0.0;
  const double a = p.g * p.g - 1.0;
  return rpow(p.g, j + k) * std::pow(a, l - p.scissors) / factorial(l);
}

Complex decoherence_element(const process::Decoherence& p, int j, int k, int m, int n) {
  const int l = j - m;
  if (l < 0 || k - n != l) return 0.0;
  const double nu = p.nu();
  const double damp = 1.0 - nu * nu;
  return factorial(j) * factorial(k) / (factorial(m) * factorial(n)) * rpow(p.n_bath, l) / factorial(l) *
         rpow(nu, m + n) * rpow(damp, l);
}

Complex beam_splitter_element(const process::BeamSplitter& p, const MomentIndex& out, const MomentIndex& in) {
  const int j1 = out.j[0], j2 = out.j[1], k1 = out.k[0], k2 = out.k[1];
  const int m1 = in.j[0], m2 = in.j[1], n1 = in.k[0], n2 = in.k[1];
  if (m1 + m2 != j1 + j2 || n1 + n2 != k1 + k2) return 0.0;
  double sum = 0.0;
  for (int q = 0; q <= j1; ++q) {
    if (m1 - q < 0 || m1 - q > j2) continue;
    for (int r = 0; r <= k1; ++r) {
      if (n1 - r < 0 || n1 - r > k2) continue;
      const double sign = ((j1 + k1 - q - r) % 2 == 0) ? 1.0 : -1.0;
      sum += binomial(j1, q) * binomial(k1, r) * binomial(j2, m1 - q) * binomial(k2, n1 - r) * sign *
             rpow(p.T, 2 * q + 2 * r + j2 + k2 - m1 - n1) * rpow(p.R, m1 + n1 + j1 + k1 - 2 * q - 2 * r);
    }
  }
  return sum;
}

int max_order(const MomentIndex& index) {
  int order = 1;
  for (int s = 0; s < index.modes(); ++s) order = std::max({order, index.j[s], index.k[s]});
  return order;
}

GaussianState gaussian_output(const GaussianTriplet& triplet, const Amplitudes& alpha) {
  return gaussian_apply(triplet, GaussianState::coherent(alpha));
}

}  // namespace

double process::Decoherence::nu() const { return std::exp(-gamma * tau); }

std::string kind_name(const ProcessSpec& spec) {
  return std::visit(overloaded{
                        [](const process::Identity&) { return std::string("identity"); },
                        [](const process::Attenuation&) { return std::string("attenuation"); },
                        [](const process::Displacement&) { return std::string("displacement"); },
                        [](const process::PhotonAdd&) { return std::string("photon_add"); },
                        [](const process::PhotonSub&) { return std::string("photon_sub"); },
                        [](const process::BeamSplitter&) { return std::string("beam_splitter"); },
                        [](const process::CatGeneration&) { return std::string("cat_generation"); },
                        [](const process::Nla&) { return std::string("nla"); },
                        [](const process::Decoherence&) { return std::string("decoherence"); },
                        [](const process::GaussianChannel&) { return std::string("gaussian"); },
                    },
                    spec);
}

int mode_count(const ProcessSpec& spec) {
  return std::visit(overloaded{
                        [](const process::Identity& p) { return p.modes; },
                        [](const process::BeamSplitter&) { return 2; },
                        [](const process::GaussianChannel& p) { return p.triplet.modes(); },
                        [](const auto&) { return 1; },
                    },
                    spec);
}

void validate(const ProcessSpec& spec) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, what); };
  std::visit(overloaded{
                 [&](const process::Identity& p) {
                   if (p.modes < 1) fail("identity: modes must be >= 1");
                 },
                 [&](const process::Attenuation& p) {
                   if (!(p.eta > 0.0 && p.eta < 1.0)) fail("attenuation: eta must lie in (0, 1)");
                 },
                 [&](const process::Displacement& p) {
                   if (!std::isfinite(p.beta.real()) || !std::isfinite(p.beta.imag())) {
                     fail("displacement: beta must be finite");
                   }
                 },
                 [&](const process::BeamSplitter& p) {
                   if (std::abs(p.T * p.T + p.R * p.R - 1.0) > 1e-12) {
                     fail("beam_splitter: T^2 + R^2 must equal 1 within 1e-12");
                   }
                 },
                 [&](const process::Nla& p) {
                   if (!(p.g > 1.0)) fail("nla: gain g must be > 1");
                   if (p.scissors < 1) fail("nla: scissors count N must be >= 1");
                 },
                 [&](const process::Decoherence& p) {
                   if (!(p.n_bath >= 0.0)) fail("decoherence: bath occupation N must be >= 0");
                   if (!(p.gamma > 0.0)) fail("decoherence: gamma must be > 0");
                   if (!(p.tau >= 0.0)) fail("decoherence: tau must be >= 0");
                 },
                 [&](const process::GaussianChannel& p) { p.triplet.validate(); },
                 [](const auto&) {},
             },
             spec);
}

Complex output_moments(const ProcessSpec& spec, const Amplitudes& alpha, const MomentIndex& index) {
  validate(spec);
  const int modes = mode_count(spec);
  if (static_cast<int>(alpha.size()) != modes || index.modes() != modes) {
    throw Error(ErrorCode::dimension_mismatch,
                kind_name(spec) + ": expected " + std::to_string(modes) + "-mode probe and index");
  }
  return std::visit(
      overloaded{
          [&](const process::Identity&) {
            Complex v = 1.0;
            for (int s = 0; s < modes; ++s) v *= monomial(alpha[s], index.j[s], index.k[s]);
            return v;
          },
          [&](const process::Attenuation& p) {
            return rpow(p.eta, index.j[0] + index.k[0]) * monomial(alpha[0], index.j[0], index.k[0]);
          },
          [&](const process::Displacement& p) {
            return monomial(alpha[0] + p.beta, index.j[0], index.k[0]);
          },
          [&](const process::PhotonAdd&) {
            const int j = index.j[0], k = index.k[0];
            Complex v = monomial(alpha[0], j + 1, k + 1) + static_cast<double>(j + k + 1) * monomial(alpha[0], j, k);
            if (j > 0 && k > 0) v += static_cast<double>(j * k) * monomial(alpha[0], j - 1, k - 1);
            return v;
          },
          [&](const process::PhotonSub&) { return monomial(alpha[0], index.j[0] + 1, index.k[0] + 1); },
          [&](const process::BeamSplitter& p) {
            const Complex out1 = p.T * alpha[0] - p.R * alpha[1];
            const Complex out2 = p.R * alpha[0] + p.T * alpha[1];
            return monomial(out1, index.j[0], index.k[0]) * monomial(out2, index.j[1], index.k[1]);
          },
          [&](const process::CatGeneration&) {
            return cat_coefficient(index.j[0], index.k[0]) * monomial(alpha[0], index.j[0], index.k[0]);
          },
          [&](const process::Nla& p) {
            const int j = index.j[0], k = index.k[0];
            if (j == 0 && k == 0 && p.vacuum_branch == process::NlaVacuumBranch::include) return Complex(1.0);
            const double succ = nla_success_probability(p.g, p.scissors, alpha[0]).value;
            return rpow(p.g, j + k) * succ * monomial(alpha[0], j, k);
          },
          [&](const process::Decoherence& p) {
            // Moments at time tau from coherent input moments M_{m, m-j+k}(0).
            const int j = index.j[0], k = index.k[0];
            Complex v{};
            for (int m = std::max(0, j - k); m <= j; ++m) {
              const int n = m - j + k;
              v += decoherence_element(p, j, k, m, n) * monomial(alpha[0], m, n);
            }
            return v;
          },
          [&](const process::GaussianChannel& p) {
            const auto table = gaussian_moments(gaussian_output(p.triplet, alpha), max_order(index));
            return table.at(index);
          },
      },
      spec);
}

MomentTable output_table(const ProcessSpec& spec, const Amplitudes& alpha, int cutoff) {
  validate(spec);
  const int modes = mode_count(spec);
  if (static_cast<int>(alpha.size()) != modes) {
    throw Error(ErrorCode::dimension_mismatch,
                kind_name(spec) + ": expected " + std::to_string(modes) + "-mode probe");
  }
  if (const auto* g = std::get_if<process::GaussianChannel>(&spec)) {
    return gaussian_moments(gaussian_output(g->triplet, alpha), cutoff);
  }
  MomentTable table(modes, cutoff);
  for (std::size_t f = 0; f < table.size(); ++f) {
    table[f] = output_moments(spec, alpha, table.index_of(f));
  }
  return table;
}

ProcessTensor catalog_tensor(const ProcessSpec& spec, int cutoff_out, int cutoff_in) {
  validate(spec);
  if (std::holds_alternative<process::GaussianChannel>(spec)) {
    throw Error(ErrorCode::no_closed_form,
                "gaussian channel: no closed form; use estimation (estimate_tensor)");
  }
  if (cutoff_out < 1 || cutoff_in < 1) throw Error(ErrorCode::invalid_argument, "cutoffs must be >= 1");
  const int modes = mode_count(spec);
  ProcessTensor tensor(modes, cutoff_out, cutoff_in);

  if (const auto* id = std::get_if<process::Identity>(&spec)) {
    return ProcessTensor::identity(id->modes, cutoff_out, cutoff_in);
  }

  for (std::size_t o = 0; o < tensor.out_box().size(); ++o) {
    const MomentIndex out = tensor.out_index(o);
    for (std::size_t i = 0; i < tensor.in_box().size(); ++i) {
      const MomentIndex in = tensor.in_index(i);
      Complex value = std::visit(
          overloaded{
              [&](const process::Attenuation& p) -> Complex {
                const int j = out.j[0], k = out.k[0];
                return (in.j[0] == j && in.k[0] == k) ? Complex(rpow(p.eta, j + k)) : Complex{};
              },
              [&](const process::Displacement& p) -> Complex {
                return displacement_element(p, out.j[0], out.k[0], in.j[0], in.k[0]);
              },
              [&](const process::PhotonAdd&) -> Complex {
                const int j = out.j[0], k = out.k[0], m = in.j[0], n = in.k[0];
                Complex v{};
                if (m == j + 1 && n == k + 1) v += 1.0;
                if (m == j && n == k) v += static_cast<double>(j + k + 1);
                if (m == j - 1 && n == k - 1) v += static_cast<double>(j * k);
                return v;
              },
              [&](const process::PhotonSub&) -> Complex {
                return (in.j[0] == out.j[0] + 1 && in.k[0] == out.k[0] + 1) ? Complex(1.0) : Complex{};
              },
              [&](const process::BeamSplitter& p) -> Complex { return beam_splitter_element(p, out, in); },
              [&](const process::CatGeneration&) -> Complex {
                return (in.j[0] == out.j[0] && in.k[0] == out.k[0]) ? cat_coefficient(out.j[0], out.k[0])
                                                                    : Complex{};
              },
              [&](const process::Nla& p) -> Complex {
                return nla_element(p, out.j[0], out.k[0], in.j[0], in.k[0]);
              },
              [&](const process::Decoherence& p) -> Complex {
                return decoherence_element(p, out.j[0], out.k[0], in.j[0], in.k[0]);
              },
              [](const auto&) -> Complex { return {}; },
          },
          spec);
      tensor(o, i) = value;
    }
  }
  tensor.flush_small(1e-15);
  return tensor;
}

GaussianState gaussian_apply(const GaussianTriplet& triplet, const GaussianState& state) {
  triplet.validate();
  if (triplet.D.size() != state.mean.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "gaussian_apply: triplet acts on " + std::to_string(triplet.modes()) + " modes, state has " +
                    std::to_string(state.modes()));
  }
  Eigen::MatrixXd cov = triplet.S * state.cov * triplet.S.transpose() + triplet.E_noise;
  cov = (cov + cov.transpose()) / 2.0;
  return {triplet.S * state.mean + triplet.D, cov};
}

std::optional<GaussianTriplet> gaussian_triplet_of(const ProcessSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const process::Identity& p) -> std::optional<GaussianTriplet> {
            return GaussianTriplet::identity(p.modes);
          },
          [](const process::Attenuation& p) -> std::optional<GaussianTriplet> {
            auto t = GaussianTriplet::identity(1);
            t.S *= p.eta;
            t.E_noise = Eigen::MatrixXd::Identity(2, 2) * (1.0 - p.eta * p.eta) / 4.0;
            return t;
          },
          [](const process::Displacement& p) -> std::optional<GaussianTriplet> {
            auto t = GaussianTriplet::identity(1);
            t.D << p.beta.real(), p.beta.imag();
            return t;
          },
          [](const process::BeamSplitter& p) -> std::optional<GaussianTriplet> {
            auto t = GaussianTriplet::identity(2);
            t.S << p.T, 0, -p.R, 0,  //
                0, p.T, 0, -p.R,     //
                p.R, 0, p.T, 0,      //
                0, p.R, 0, p.T;
            return t;
          },
          [](const process::Decoherence& p) -> std::optional<GaussianTriplet> {
            const double nu = p.nu();
            auto t = GaussianTriplet::identity(1);
            t.S *= nu;
            t.E_noise = Eigen::MatrixXd::Identity(2, 2) * (1.0 - nu * nu) * (2.0 * p.n_bath + 1.0) / 4.0;
            return t;
          },
          [](const process::GaussianChannel& p) -> std::optional<GaussianTriplet> { return p.triplet; },
          [](const auto&) -> std::optional<GaussianTriplet> { return std::nullopt; },
      },
      spec);
}

NlaProbability nla_success_probability(double g, int scissors, Complex alpha) {
  if (!(g > 1.0)) throw Error(ErrorCode::invalid_argument, "nla: gain g must be > 1");
  if (scissors < 1) throw Error(ErrorCode::invalid_argument, "nla: scissors count N must be >= 1");
  const double a2 = std::norm(alpha);
  const double value = std::exp(-(1.0 - g * g) * a2) / std::pow(g * g - 1.0, scissors);
  const bool valid = static_cast<double>(scissors) >= 10.0 * g * std::sqrt(a2);
  return {value, valid};
}

}  // namespace mqpt
