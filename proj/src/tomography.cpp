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

#include "mqpt/tomography.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

namespace mqpt {

namespace {

std::size_t ipow(std::size_t base, int exponent) {
  std::size_t result = 1;
  for (int e = 0; e < exponent; ++e) result *= base;
  return result;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string describe_probe(const Amplitudes& alpha) {
  std::ostringstream os;
  os.precision(17);
  os << "alpha=(";
  for (std::size_t s = 0; s < alpha.size(); ++s) {
    if (s > 0) os << ", ";
    os << alpha[s].real() << (alpha[s].imag() < 0 ? "" : "+") << alpha[s].imag() << "i";
  }
  os << ")";
  return os.str();
}

std::string describe_index(const MomentIndex& index) {
  std::ostringstream os;
  os << "(j=[";
  for (int s = 0; s < index.modes(); ++s) os << (s ? "," : "") << index.j[s];
  os << "], k=[";
  for (int s = 0; s < index.modes(); ++s) os << (s ? "," : "") << index.k[s];
  os << "])";
  return os.str();
}

}  // namespace

SamplingPlan SamplingPlan::standard(int max_order, int modes, double radius_scale) {
  if (max_order < 1) throw Error(ErrorCode::invalid_argument, "plan.max_order must be >= 1");
  if (modes < 1) throw Error(ErrorCode::invalid_argument, "plan needs at least one mode");
  if (!(radius_scale > 0.0) || !std::isfinite(radius_scale)) {
    throw Error(ErrorCode::invalid_argument, "plan.radius_scale must be positive");
  }
  SamplingPlan plan;
  plan.max_order = max_order;
  plan.angular_count = 4 * max_order + 1;
  int count = 0;
  double r_max = 0.0;
  if (modes == 1) {
    count = 192;
    r_max = 1.4;
    plan.fit_terms = std::max(14, max_order + 6);
  } else {
    plan.fit_terms = 2 * max_order + 2;
    count = std::max(10, plan.fit_terms + 4);
    r_max = 1.0;
  }
  count = std::max(count, plan.fit_terms);
  plan.radii.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    plan.radii[i] = radius_scale * r_max * static_cast<double>(i + 1) / static_cast<double>(count);
  }
  return plan;
}

void SamplingPlan::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, "plan: " + what); };
  if (max_order < 1) fail("max_order must be >= 1");
  if (angular_count < 2 * max_order + 1) {
    fail("angular_count must be >= 2*max_order+1 = " + std::to_string(2 * max_order + 1));
  }
  if (fit_terms < max_order + 1) fail("fit_terms must be >= max_order+1 = " + std::to_string(max_order + 1));
  if (radii.size() < static_cast<std::size_t>(fit_terms)) {
    fail("needs at least fit_terms = " + std::to_string(fit_terms) + " radii, got " +
         std::to_string(radii.size()));
  }
  if (radii.size() < static_cast<std::size_t>((max_order + 2) / 2)) fail("too few radii for max_order");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) fail("radii must be positive and finite");
    if (i > 0 && !(radii[i] > radii[i - 1])) fail("radii must be strictly increasing");
  }
  if (!(noise_floor >= 0.0)) fail("noise_floor must be >= 0");
}

Estimate estimate_tensor(const ProbeResponse& response, int modes, const SamplingPlan& plan, int cutoff_out) {
  plan.validate();
  if (modes < 1) throw Error(ErrorCode::invalid_argument, "estimate_tensor: modes must be >= 1");
  if (cutoff_out < 1) throw Error(ErrorCode::invalid_argument, "estimate_tensor: cutoff_out must be >= 1");

  const int J = plan.max_order;
  const int T = plan.angular_count;
  const int K = plan.fit_terms;
  const int R = static_cast<int>(plan.radii.size());

  // Radial design: monomials in u = r^2 with columns scaled to unit maximum,
  // shared by every band once r^{|d|} is divided out. The graded basis keeps
  // the weighted solve accurate when near-origin rows dominate.
  const double u_max = plan.radii.back() * plan.radii.back();
  Eigen::MatrixXd radial(R, K);
  for (int s = 0; s < K; ++s) {
    for (int r = 0; r < R; ++r) radial(r, s) = std::pow(plan.radii[r] * plan.radii[r] / u_max, s);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(radial);
  const auto& sv = svd.singularValues();
  const double single_cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  const double condition = std::pow(single_cond, modes);
  if (!(condition <= kMaxPlanCondition)) {
    std::ostringstream os;
    os.precision(3);
    os << "estimate_tensor: radial design condition number " << condition << " exceeds 1e10 for bands d="
       << -J << ".." << J << " (every band shares the design)";
    throw Error(ErrorCode::ill_conditioned, os.str());
  }

  const std::size_t radius_tuples = ipow(static_cast<std::size_t>(R), modes);
  const std::size_t angle_tuples = ipow(static_cast<std::size_t>(T), modes);
  const std::size_t coeff_tuples = ipow(static_cast<std::size_t>(K), modes);
  const IndexBox radius_box(modes, R);
  const IndexBox angle_box(modes, T);
  const IndexBox coeff_box(modes, K);
  const IndexBox band_box(modes, 2 * J + 1);
  const std::size_t bands = band_box.size();
  const auto rows = static_cast<Eigen::Index>(radius_tuples);

  Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(coeff_tuples));
  std::vector<int> coeff_order(coeff_tuples);  // max digit of each coefficient tuple
  {
    std::vector<int> rd(modes), cd(modes);
    for (std::size_t c = 0; c < coeff_tuples; ++c) {
      coeff_box.unflatten(c, cd);
      coeff_order[c] = *std::max_element(cd.begin(), cd.end());
      for (std::size_t r = 0; r < radius_tuples; ++r) {
        radius_box.unflatten(r, rd);
        double v = 1.0;
        for (int s = 0; s < modes; ++s) v *= radial(rd[s], cd[s]);
        design(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
      }
    }
  }

  std::vector<Complex> unit(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    unit[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(T));
  }

  // DFT bins: signed frequency per mode; bins outside [-J, J] carry no fitted
  // coefficient and serve as the per-circle noise probe.
  std::vector<std::size_t> band_bin(bands);
  std::vector<std::size_t> spare_bins;
  {
    std::vector<int> qd(modes), bd(modes);
    for (std::size_t b = 0; b < bands; ++b) {
      band_box.unflatten(b, bd);
      for (int s = 0; s < modes; ++s) qd[s] = ((bd[s] - J) % T + T) % T;
      band_bin[b] = angle_box.flatten(qd);
    }
    for (std::size_t q = 0; q < angle_tuples; ++q) {
      angle_box.unflatten(q, qd);
      bool spare = false;
      for (int s = 0; s < modes; ++s) {
        const int d = qd[s] <= T / 2 ? qd[s] : qd[s] - T;
        spare = spare || std::abs(d) > J;
      }
      if (spare) spare_bins.push_back(q);
    }
  }

  // Probe grid: flat index = radius_tuple * angle_tuples + angle_tuple.
  const IndexBox out_box(2 * modes, cutoff_out + 1);
  const std::size_t outputs = out_box.size();
  std::vector<Complex> samples(outputs * radius_tuples * angle_tuples);
  {
    std::vector<int> rd(modes), td(modes), digits(2 * modes);
    Amplitudes alpha(static_cast<std::size_t>(modes));
    for (std::size_t r = 0; r < radius_tuples; ++r) {
      radius_box.unflatten(r, rd);
      for (std::size_t t = 0; t < angle_tuples; ++t) {
        angle_box.unflatten(t, td);
        for (int s = 0; s < modes; ++s) alpha[s] = plan.radii[rd[s]] * unit[td[s]];
        const MomentTable table = response(alpha);
        if (table.modes() != modes || table.cutoff() < cutoff_out) {
          throw Error(ErrorCode::dimension_mismatch,
                      "estimate_tensor: response returned a " + std::to_string(table.modes()) +
                          "-mode table with cutoff " + std::to_string(table.cutoff()) + ", need " +
                          std::to_string(modes) + " modes and cutoff >= " + std::to_string(cutoff_out));
        }
        const std::size_t probe = r * angle_tuples + t;
        for (std::size_t o = 0; o < outputs; ++o) {
          out_box.unflatten(o, digits);
          const std::size_t flat = table.box().flatten(digits);
          const Complex v = table[flat];
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw Error(ErrorCode::non_finite, "estimate_tensor: non-finite response at " + describe_probe(alpha) +
                                                   " for output " + describe_index(table.index_of(flat)));
          }
          samples[o * radius_tuples * angle_tuples + probe] = v;
        }
      }
    }
  }

  // Separable DFT over the angle grid, one mode at a time.
  auto transform = [&](const Complex* in, std::vector<Complex>& out, std::vector<Complex>& scratch) {
    out.assign(in, in + angle_tuples);
    std::vector<int> digits(modes);
    for (int s = 0; s < modes; ++s) {
      scratch.assign(angle_tuples, Complex{});
      for (std::size_t q = 0; q < angle_tuples; ++q) {
        angle_box.unflatten(q, digits);
        const int qs = digits[s];
        Complex acc{};
        for (int t = 0; t < T; ++t) {
          digits[s] = t;
          acc += out[angle_box.flatten(digits)] * std::conj(unit[static_cast<std::size_t>((qs * t) % T)]);
        }
        scratch[q] = acc / static_cast<double>(T);
      }
      out.swap(scratch);
    }
  };

  ProcessTensor tensor(modes, cutoff_out, J);
  std::vector<int> bd(modes), rd(modes), cd(modes), in_digits(2 * modes);
  std::vector<Complex> spectrum, scratch;
  Eigen::VectorXd ring_weight(rows);
  Eigen::MatrixXcd band_values(rows, static_cast<Eigen::Index>(bands));
  Eigen::VectorXd row_weight(rows);
  std::vector<Eigen::Index> order(radius_tuples);
  std::vector<Eigen::Index> columns;
  const double spectral_scale = std::sqrt(static_cast<double>(angle_tuples));

  for (std::size_t o = 0; o < outputs; ++o) {
    const Complex* f = samples.data() + o * radius_tuples * angle_tuples;

    for (std::size_t r = 0; r < radius_tuples; ++r) {
      const Complex* ring = f + r * angle_tuples;
      double power = 0.0;
      for (std::size_t t = 0; t < angle_tuples; ++t) power += std::norm(ring[t]);
      const double rms = std::sqrt(power / static_cast<double>(angle_tuples));
      transform(ring, spectrum, scratch);
      double spare_power = 0.0;
      for (std::size_t q : spare_bins) spare_power += std::norm(spectrum[q]);
      // Per-sample noise estimate; a bin of an N-point mean carries sigma^2/N.
      const double noise =
          spare_bins.empty() ? 0.0 : spectral_scale * std::sqrt(spare_power / static_cast<double>(spare_bins.size()));
      // Rows scaled to unit noise; the relative term covers exact responses.
      ring_weight(static_cast<Eigen::Index>(r)) = 1.0 / (noise + 1e-15 * rms + plan.noise_floor);
      for (std::size_t b = 0; b < bands; ++b) band_values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = spectrum[band_bin[b]];
    }

    for (std::size_t b = 0; b < bands; ++b) {
      band_box.unflatten(b, bd);
      int needed = 1;
      for (int s = 0; s < modes; ++s) needed = std::max(needed, J - std::abs(bd[s] - J) + 1);

      // Fit Fh_d(r) = prod r^{|d|} sum_c a_c prod u^{c}. Rows are sorted by
      // decreasing weight, which keeps Householder QR stable under widely
      // varying row scales.
      Eigen::MatrixXd target(rows, 2);
      for (std::size_t r = 0; r < radius_tuples; ++r) {
        radius_box.unflatten(r, rd);
        double radial_power = 1.0;
        for (int s = 0; s < modes; ++s) radial_power *= std::pow(plan.radii[rd[s]], std::abs(bd[s] - J));
        row_weight(static_cast<Eigen::Index>(r)) = spectral_scale * ring_weight(static_cast<Eigen::Index>(r)) * radial_power;
      }
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](Eigen::Index x, Eigen::Index y) { return row_weight(x) > row_weight(y); });
      for (Eigen::Index i = 0; i < rows; ++i) {
        const Eigen::Index r = order[static_cast<std::size_t>(i)];
        radius_box.unflatten(static_cast<std::size_t>(r), rd);
        double radial_power = 1.0;
        for (int s = 0; s < modes; ++s) radial_power *= std::pow(plan.radii[rd[s]], std::abs(bd[s] - J));
        const Complex y = band_values(r, static_cast<Eigen::Index>(b)) / radial_power;
        target(i, 0) = row_weight(r) * y.real();
        target(i, 1) = row_weight(r) * y.imag();
      }

      // Model order: smallest BIC-style score chi^2 + p ln(2 rows) over truncation
      // orders from the minimum the box needs up to fit_terms.
      double best_score = INFINITY;
      Eigen::MatrixXd best;
      std::vector<Eigen::Index> best_columns;
      for (int order_k = needed; order_k <= K; ++order_k) {
        columns.clear();
        for (std::size_t c = 0; c < coeff_tuples; ++c) {
          if (coeff_order[c] < order_k) columns.push_back(static_cast<Eigen::Index>(c));
        }
        const auto p = static_cast<Eigen::Index>(columns.size());
        if (p > rows) break;
        Eigen::MatrixXd weighted(rows, p);
        for (Eigen::Index i = 0; i < rows; ++i) {
          const Eigen::Index r = order[static_cast<std::size_t>(i)];
          for (Eigen::Index c = 0; c < p; ++c) weighted(i, c) = row_weight(r) * design(r, columns[static_cast<std::size_t>(c)]);
        }
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(weighted);
        Eigen::MatrixXd sol = qr.solve(target);
        const double chi2 = (weighted * sol - target).squaredNorm();
        const double score = chi2 + std::log(2.0 * static_cast<double>(rows)) * static_cast<double>(p);
        if (score < best_score) {
          best_score = score;
          best = std::move(sol);
          best_columns = columns;
        }
      }

      for (std::size_t i = 0; i < best_columns.size(); ++i) {
        coeff_box.unflatten(static_cast<std::size_t>(best_columns[i]), cd);
        bool inside = true;
        double scale = 1.0;
        for (int s = 0; s < modes && inside; ++s) {
          const int d = bd[s] - J;
          const int m = cd[s] + std::max(d, 0);
          const int n = cd[s] + std::max(-d, 0);
          inside = m <= J && n <= J;
          in_digits[s] = m;
          in_digits[modes + s] = n;
          scale *= std::pow(u_max, -cd[s]);
        }
        if (!inside) continue;
        const auto row = static_cast<Eigen::Index>(i);
        tensor(o, tensor.in_box().flatten(in_digits)) = scale * Complex(best(row, 0), best(row, 1));
      }
    }
  }
  return {std::move(tensor), condition};
}

ProbeResponse process_response(const ProcessSpec& spec, int cutoff) {
  validate(spec);
  return [spec, cutoff](const Amplitudes& alpha) { return output_table(spec, alpha, cutoff); };
}

ProbeResponse noisy_response(ProbeResponse base, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::invalid_argument, "noise sigma must be finite and >= 0");
  }
  return [base = std::move(base), sigma, seed](const Amplitudes& alpha) {
    MomentTable table = base(alpha);
    if (sigma == 0.0) return table;
    std::uint64_t h = splitmix64(seed);
    for (const Complex& a : alpha) {
      h = splitmix64(h ^ std::bit_cast<std::uint64_t>(a.real()));
      h = splitmix64(h ^ std::bit_cast<std::uint64_t>(a.imag()));
    }
    std::mt19937_64 rng(h);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t f = 0; f < table.size(); ++f) {
      const double scale = sigma * (1.0 + std::abs(table[f])) / std::numbers::sqrt2;
      const double re = normal(rng);
      const double im = normal(rng);
      table[f] += scale * Complex(re, im);
    }
    return table;
  };
}

}  // namespace mqpt
