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

#include "mqpt/moments.hpp"

#include <cmath>
#include <string>

namespace mqpt {

namespace {

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw Error(ErrorCode::invalid_argument, "cutoff must be >= 1");
}

Complex ipow(Complex base, int exponent) {
  Complex result = 1.0;
  for (int e = 0; e < exponent; ++e) result *= base;
  return result;
}

}  // namespace

MomentTable coherent_moments(const Amplitudes& alpha, int cutoff) {
  require_cutoff(cutoff);
  const int modes = static_cast<int>(alpha.size());
  MomentTable table(modes, cutoff);
  std::vector<int> digits(static_cast<std::size_t>(2 * modes));
  for (std::size_t f = 0; f < table.size(); ++f) {
    table.box().unflatten(f, digits);
    Complex value = 1.0;
    for (int s = 0; s < modes; ++s) {
      value *= ipow(alpha[s], digits[s]) * ipow(std::conj(alpha[s]), digits[modes + s]);
    }
    table[f] = value;
  }
  return table;
}

MomentTable fock_moments(int n, int cutoff) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "Fock number must be >= 0");
  require_cutoff(cutoff);
  MomentTable table(1, cutoff);
  double falling = 1.0;  // n!/(n-j)!
  for (int j = 0; j <= std::min(n, cutoff); ++j) {
    table.set({j, j}, falling);
    falling *= static_cast<double>(n - j);
  }
  return table;
}

MomentTable thermal_moments(double mean_photons, int cutoff) {
  if (!(mean_photons >= 0.0)) throw Error(ErrorCode::invalid_argument, "thermal N must be >= 0");
  require_cutoff(cutoff);
  MomentTable table(1, cutoff);
  double value = 1.0;  // j! N^j
  for (int j = 0; j <= cutoff; ++j) {
    table.set({j, j}, value);
    value *= static_cast<double>(j + 1) * mean_photons;
  }
  return table;
}

MomentTable gaussian_moments(const GaussianState& state, int cutoff) {
  require_cutoff(cutoff);
  const int modes = state.modes();
  const int vars = 2 * modes;

  std::size_t box_size = 1;
  for (int v = 0; v < vars; ++v) {
    box_size *= static_cast<std::size_t>(cutoff + 1);
    if (box_size > kMaxGaussianTableSize) {
      throw Error(ErrorCode::order_unsupported,
                  "gaussian_moments: order unsupported for " + std::to_string(modes) +
                      " modes at cutoff " + std::to_string(cutoff));
    }
  }

  // Variables 0..m-1 are a_s (P-function z_s), m..2m-1 are a_s^dag (conj z_s).
  // Contractions come from the P covariance V - I/4 in quadrature form.
  const Eigen::MatrixXd vp = state.cov - Eigen::MatrixXd::Identity(vars, vars) / 4.0;
  const Complex i{0.0, 1.0};
  std::vector<Complex> mu(static_cast<std::size_t>(vars));
  Eigen::MatrixXcd contraction(vars, vars);
  for (int s = 0; s < modes; ++s) {
    const Complex m{state.mean(2 * s), state.mean(2 * s + 1)};
    mu[s] = m;
    mu[modes + s] = std::conj(m);
  }
  for (int s = 0; s < modes; ++s) {
    const int xs = 2 * s, ps = 2 * s + 1;
    for (int t = 0; t < modes; ++t) {
      const int xt = 2 * t, pt = 2 * t + 1;
      const Complex zz = vp(xs, xt) - vp(ps, pt) + i * (vp(xs, pt) + vp(ps, xt));
      const Complex bar_z = vp(xs, xt) + vp(ps, pt) + i * (vp(xs, pt) - vp(ps, xt));  // <conj z_s z_t>
      contraction(s, t) = zz;
      contraction(modes + s, modes + t) = std::conj(zz);
      contraction(modes + s, t) = bar_z;
      contraction(t, modes + s) = bar_z;
    }
  }

  MomentTable table(modes, cutoff);
  const IndexBox& box = table.box();
  std::vector<std::size_t> stride(static_cast<std::size_t>(vars));
  {
    std::size_t st = 1;
    for (int v = vars - 1; v >= 0; --v) {
      stride[v] = st;
      st *= static_cast<std::size_t>(cutoff + 1);
    }
  }

  // Stein recursion: E[X_v * rest] = mu_v E[rest] + sum_w C(v,w) n_w E[rest - w].
  // Every referenced state has a smaller flat index, so one forward pass suffices.
  std::vector<int> digits(static_cast<std::size_t>(vars));
  table[0] = 1.0;
  for (std::size_t f = 1; f < table.size(); ++f) {
    box.unflatten(f, digits);
    int v = 0;
    while (digits[v] == 0) ++v;
    const std::size_t rest = f - stride[v];
    digits[v] -= 1;
    Complex value = mu[v] * table[rest];
    for (int w = 0; w < vars; ++w) {
      if (digits[w] == 0) continue;
      const Complex c = contraction(v, w);
      if (c == Complex{}) continue;
      value += c * static_cast<double>(digits[w]) * table[rest - stride[w]];
    }
    table[f] = value;
  }
  return table;
}

std::vector<LowMoments> gaussian_low_moments(const GaussianState& state) {
  std::vector<LowMoments> out;
  const Complex i{0.0, 1.0};
  for (int s = 0; s < state.modes(); ++s) {
    const int x = 2 * s, p = 2 * s + 1;
    const Complex m10{state.mean(x), state.mean(p)};
    LowMoments lm;
    lm.m10 = m10;
    // The operator-algebra constant is -1/2 (a^dag a = x^2 + p^2 - 1/2).
    lm.m11 = (state.cov(x, x) + state.cov(p, p) - 0.5) + std::norm(m10);
    lm.m20 = (state.cov(x, x) - state.cov(p, p) + 2.0 * i * state.cov(x, p)) + m10 * m10;
    out.push_back(lm);
  }
  return out;
}

MomentTable apply_tensor(const ProcessTensor& tensor, const MomentTable& input) {
  if (tensor.modes() != input.modes()) {
    throw Error(ErrorCode::dimension_mismatch,
                "apply_tensor: tensor has " + std::to_string(tensor.modes()) + " modes, table has " +
                    std::to_string(input.modes()));
  }
  const int modes = tensor.modes();
  const int sum_cutoff = std::min(tensor.cutoff_in(), input.cutoff());

  PropagationInfo info;
  info.summation_cutoff = sum_cutoff;
  const int support = input.support();
  if (support > tensor.cutoff_in()) {
    info.truncated = true;
    info.warning = "input table has support up to order " + std::to_string(support) +
                   " but the tensor input cutoff is " + std::to_string(tensor.cutoff_in()) +
                   "; higher input moments were dropped";
  }

  // Map the summation box onto flat indices of both the tensor and the table.
  IndexBox sum_box(2 * modes, sum_cutoff + 1);
  std::vector<std::size_t> tensor_in(sum_box.size());
  std::vector<std::size_t> table_in(sum_box.size());
  std::vector<int> digits(static_cast<std::size_t>(2 * modes));
  for (std::size_t f = 0; f < sum_box.size(); ++f) {
    sum_box.unflatten(f, digits);
    tensor_in[f] = tensor.in_box().flatten(digits);
    table_in[f] = input.box().flatten(digits);
  }

  MomentTable out(modes, tensor.cutoff_out());
  for (std::size_t o = 0; o < tensor.out_box().size(); ++o) {
    Complex acc{};
    for (std::size_t f = 0; f < sum_box.size(); ++f) {
      acc += tensor(o, tensor_in[f]) * input[table_in[f]];
    }
    out[o] = acc;
  }
  out.set_propagation(std::move(info));
  return out;
}

}  // namespace mqpt
