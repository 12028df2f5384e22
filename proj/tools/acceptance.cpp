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

#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "mqpt/compare.hpp"
#include "mqpt/fock.hpp"
#include "mqpt/gaussian_id.hpp"
#include "mqpt/moments.hpp"
#include "mqpt/nonclassicality.hpp"
#include "mqpt/processes.hpp"
#include "mqpt/tomography.hpp"

namespace mqpt::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

Check at_most(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance, false};
}

Check holds(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, 1.0, ok, false}; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

Criterion catalog_vs_estimation() {
  Criterion c{1, "catalog vs estimation", {}};
  const std::vector<std::pair<std::string, ProcessSpec>> cases = {
      {"identity", process::Identity{}},
      {"attenuation", process::Attenuation{0.7}},
      {"displacement", process::Displacement{{0.3, 0.2}}},
      {"photon_add", process::PhotonAdd{}},
      {"photon_sub", process::PhotonSub{}},
      {"cat_generation", process::CatGeneration{}},
      {"nla", process::Nla{1.2, 8}},
      {"decoherence", process::Decoherence{2.0, 1.0, 0.5}},
  };
  constexpr int J = 4;
  const auto start = Clock::now();
  for (const auto& [name, spec] : cases) {
    const Estimate est = estimate_tensor(process_response(spec, J), 1, SamplingPlan::standard(J), J);
    c.checks.push_back(at_most(name, compare_tensors(est.tensor, catalog_tensor(spec, J, J)).max_abs_error, 1e-8));
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  Check runtime = at_most("runtime_s", seconds, 30.0);
  runtime.timing = true;
  c.checks.push_back(runtime);
  return c;
}

Criterion beam_splitter() {
  Criterion c{2, "beam splitter", {}};
  const ProcessSpec spec = process::BeamSplitter{0.8, 0.6};
  constexpr int J = 2;
  const Estimate est = estimate_tensor(process_response(spec, J), 2, SamplingPlan::standard(J, 2), J);
  c.checks.push_back(at_most("max_abs_error", compare_tensors(est.tensor, catalog_tensor(spec, J, J)).max_abs_error, 1e-8));
  double violation = 0.0;
  const ProcessTensor& t = est.tensor;
  for (std::size_t o = 0; o < t.out_box().size(); ++o) {
    const MomentIndex jk = t.out_index(o);
    for (std::size_t i = 0; i < t.in_box().size(); ++i) {
      const MomentIndex mn = t.in_index(i);
      if (mn.j[0] + mn.j[1] != jk.j[0] + jk.j[1] || mn.k[0] + mn.k[1] != jk.k[0] + jk.k[1]) {
        violation = std::max(violation, std::abs(t(o, i)));
      }
    }
  }
  c.checks.push_back(at_most("order_violation", violation, 1e-10));
  return c;
}

Criterion gaussian_identification(std::uint64_t seed) {
  Criterion c{3, "gaussian identification", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  double exact_err = 0.0;
  double noisy_err = 0.0;
  int under_determined = 0;
  int trials = 0;
  for (int m = 1; m <= 3; ++m) {
    const int n = 2 * m;
    for (int t = 0; t < 20; ++t, ++trials) {
      const Eigen::MatrixXd S = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return uniform(rng); });
      const Eigen::VectorXd D = Eigen::VectorXd::NullaryExpr(n, [&] { return uniform(rng); });
      const Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return uniform(rng); });
      const Eigen::MatrixXd E = A.transpose() * A / 10.0;

      const auto probes = default_probes(m);
      std::vector<Eigen::VectorXd> means;
      for (const auto& alpha : probes) {
        Eigen::VectorXd x(n);
        for (int s = 0; s < m; ++s) {
          x(2 * s) = alpha[s].real();
          x(2 * s + 1) = alpha[s].imag();
        }
        means.push_back(S * x + D);
      }
      const Eigen::MatrixXd cov = S * S.transpose() / 4.0 + E;
      auto error = [&](const GaussianTriplet& g) {
        return std::max({(g.S - S).cwiseAbs().maxCoeff(), (g.E_noise - E).cwiseAbs().maxCoeff(),
                         (g.D - D).cwiseAbs().maxCoeff()});
      };
      exact_err = std::max(exact_err, error(identify_gaussian(probes, means, cov).triplet));

      try {
        identify_gaussian({probes.begin(), probes.end() - 1}, {means.begin(), means.end() - 1}, cov);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::under_determined) ++under_determined;
      }

      constexpr double sigma = 1e-6;
      auto noisy_means = means;
      for (auto& mu : noisy_means) {
        for (int i = 0; i < n; ++i) mu(i) += sigma * normal(rng);
      }
      Eigen::MatrixXd noisy_cov = cov;
      for (int r = 0; r < n; ++r) {
        for (int q = r; q < n; ++q) {
          const double d = sigma * normal(rng);
          noisy_cov(r, q) += d;
          if (q != r) noisy_cov(q, r) += d;
        }
      }
      noisy_err = std::max(noisy_err, error(identify_gaussian(probes, noisy_means, noisy_cov).triplet));
    }
  }
  c.checks.push_back(at_most("exact_recovery", exact_err, 1e-10));
  c.checks.push_back(holds("under_determined_rejected", under_determined == trials));
  c.checks.push_back(at_most("noisy_recovery", noisy_err, 1e-4));
  return c;
}

// Polynomial through (x_i, y_i) evaluated at 0.
double neville_at_zero(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      y[i] = (x[i + level] * y[i] - x[i] * y[i + 1]) / (x[i + level] - x[i]);
    }
  }
  return y[0];
}

Criterion moment_propagation() {
  Criterion c{4, "moment propagation", {}};
  double thermal_err = 0.0;
  for (double eta : {0.3, 0.7}) {
    const ProcessTensor att = catalog_tensor(process::Attenuation{eta}, 4, 4);
    for (double N : {0.5, 2.0}) {
      const MomentTable out = apply_tensor(att, thermal_moments(N, 4));
      for (int j = 0; j <= 4; ++j) {
        thermal_err = std::max(thermal_err, std::abs(out.at(j, j) - factorial(j) * std::pow(eta * eta * N, j)));
      }
    }
  }
  c.checks.push_back(at_most("attenuated_thermal", thermal_err, 1e-12));

  constexpr double N = 2.0;
  constexpr double gamma = 1.0;
  auto variance = [&](double r, double tau) {
    const ProcessTensor dec = catalog_tensor(process::Decoherence{N, gamma, tau}, 2, 2);
    return quadrature_variance_x(apply_tensor(dec, gaussian_moments(GaussianState::squeezed_vacuum(r), 2)));
  };
  double extrapolation_err = 0.0;
  bool monotone = true;
  double previous = -1.0;
  for (double gt : {0.0, 0.5, 2.0, 10.0}) {
    const double tau = gt / gamma;
    std::vector<double> rs, vs;
    for (int i = 1; i <= 8; ++i) {
      rs.push_back(0.01 * i);
      vs.push_back(variance(0.01 * i, tau));
    }
    extrapolation_err = std::max(extrapolation_err, std::abs(neville_at_zero(rs, vs) - decoherence_variance(N, gamma, tau)));
    const double v = variance(0.2, tau);
    monotone = monotone && v > previous;
    previous = v;
  }
  c.checks.push_back(at_most("decoherence_r0_extrapolation", extrapolation_err, 1e-10));
  c.checks.push_back(holds("monotone_in_tau", monotone));
  return c;
}

Criterion nonclassicality() {
  Criterion c{5, "nonclassicality formulas", {}};
  double fock_dev = 0.0;
  for (int n = 1; n <= 5; ++n) fock_dev = std::max(fock_dev, std::abs(mandel_q(fock_moments(n, 4)) + 1.0));
  c.checks.push_back(at_most("fock_q_exact", fock_dev, 0.0));

  double coherent_err = 0.0;
  for (Complex a : {Complex{0.1, 0.0}, Complex{0.3, -0.4}, Complex{1.0, 1.0}, Complex{-2.0, 0.5}}) {
    coherent_err = std::max(coherent_err, std::abs(mandel_q(coherent_moments({a}, 4))));
  }
  c.checks.push_back(at_most("coherent_q", coherent_err, 1e-12));

  // Output of the amplifier on |a>: P |g a><g a| + (1 - P) |0><0|.
  double nla_err = 0.0;
  for (double g : {1.2, 2.0}) {
    for (double mod : {0.1, 1.0}) {
      const Complex a = std::polar(mod, 0.7);
      for (double p : {0.1, 0.5, 0.9}) {
        const double m11 = p * g * g * mod * mod;
        const double m22 = p * std::pow(g * mod, 4);
        const double oracle = (m22 - m11 * m11) / m11;
        const double value = q_after_nla(g, p, coherent_moments({a}, 4));
        nla_err = std::max({nla_err, std::abs(value - oracle), std::abs(value - g * g * mod * mod * (1.0 - p))});
      }
    }
  }
  c.checks.push_back(at_most("q_after_nla", nla_err, 1e-12));
  return c;
}

FockTensor fock_attenuation(double eta, int L) {
  FockTensor f(L);
  for (int m = 0; m <= L; ++m) {
    for (int n = 0; n <= L; ++n) {
      for (int l = 0; l <= std::min(m, n); ++l) {
        const double v = std::sqrt(binomial(m, l) * binomial(n, l)) * std::pow(eta, m + n - 2 * l) *
                         std::pow(1.0 - eta * eta, l);
        f.set(m - l, n - l, m, n, v);
      }
    }
  }
  return f;
}

FockTensor fock_subtraction(int L) {
  FockTensor f(L);
  for (int m = 1; m <= L; ++m) {
    for (int n = 1; n <= L; ++n) f.set(m - 1, n - 1, m, n, std::sqrt(static_cast<double>(m * n)));
  }
  return f;
}

double fock_diff(const FockTensor& a, const FockTensor& b) {
  double err = 0.0;
  const int L = a.cutoff();
  for (int j = 0; j <= L; ++j)
    for (int k = 0; k <= L; ++k)
      for (int m = 0; m <= L; ++m)
        for (int n = 0; n <= L; ++n) err = std::max(err, std::abs(a.at(j, k, m, n) - b.at(j, k, m, n)));
  return err;
}

Criterion fock_conversions() {
  Criterion c{6, "fock conversions", {}};
  constexpr int L = 12;
  const FockTensor id = FockTensor::identity(L);
  const FockTensor sub = fock_subtraction(L);
  const FockTensor att = fock_attenuation(0.7, L);

  c.checks.push_back(at_most("identity",
                             compare_tensors(fock_to_moment(id, 4, 4).tensor, catalog_tensor(process::Identity{}, 4, 4))
                                 .max_abs_error,
                             1e-9));
  c.checks.push_back(at_most(
      "photon_sub",
      compare_tensors(fock_to_moment(sub, 4, 5).tensor, catalog_tensor(process::PhotonSub{}, 4, 5)).max_abs_error,
      1e-9));
  c.checks.push_back(at_most(
      "attenuation",
      compare_tensors(fock_to_moment(att, 4, 4).tensor, catalog_tensor(process::Attenuation{0.7}, 4, 4)).max_abs_error,
      1e-9));

  const double inf = std::numeric_limits<double>::infinity();
  double round_trip = 0.0;
  for (const FockTensor* f : {&id, &sub, &att}) {
    round_trip = std::max(round_trip, fock_diff(moment_to_fock(fock_to_moment(*f, L, L, inf).tensor, L), *f));
  }
  c.checks.push_back(at_most("round_trip", round_trip, 1e-9));
  return c;
}

Criterion typo_guards() {
  Criterion c{7, "typo guards", {}};
  double m11_err = 0.0;
  for (Complex a : {Complex{0.5, 0.0}, Complex{0.3, -1.2}, Complex{2.0, 1.0}}) {
    const auto low = gaussian_low_moments(GaussianState::coherent({a}));
    m11_err = std::max(m11_err, std::abs(low[0].m11 - std::norm(a)));
  }
  c.checks.push_back(at_most("coherent_m11", m11_err, 1e-12));
  double var_err = 0.0;
  for (double N : {0.0, 1.0, 2.5}) var_err = std::max(var_err, std::abs(decoherence_variance(N, 0.8, 0.0) - 0.25));
  c.checks.push_back(at_most("decoherence_variance_tau0", var_err, 1e-15));
  return c;
}

std::vector<Criterion> core(std::uint64_t seed) {
  std::vector<Criterion> out;
  auto guarded = [&](int id, const std::string& title, const std::function<Criterion()>& f) {
    try {
      out.push_back(f());
    } catch (const Error& e) {
      Criterion failed{id, title, {}};
      failed.checks.push_back({std::string("error: ") + std::string(to_string(e.code())) + ": " + e.what(), 0.0, 0.0,
                               false, false});
      out.push_back(std::move(failed));
    }
  };
  guarded(1, "catalog vs estimation", catalog_vs_estimation);
  guarded(2, "beam splitter", beam_splitter);
  guarded(3, "gaussian identification", [&] { return gaussian_identification(seed); });
  guarded(4, "moment propagation", moment_propagation);
  guarded(5, "nonclassicality formulas", nonclassicality);
  guarded(6, "fock conversions", fock_conversions);
  guarded(7, "typo guards", typo_guards);
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

bool Criterion::passed() const {
  if (checks.empty()) return false;
  for (const auto& check : checks) {
    if (!check.passed) return false;
  }
  return true;
}

bool Report::passed() const {
  if (criteria.empty()) return false;
  for (const auto& c : criteria) {
    if (!c.passed()) return false;
  }
  return true;
}

Json Report::json() const {
  Json j;
  j["seed"] = seed;
  j["passed"] = passed();
  Json list = Json::array();
  for (const auto& c : criteria) {
    Json cj;
    cj["id"] = c.id;
    cj["title"] = c.title;
    cj["passed"] = c.passed();
    Json checks = Json::array();
    for (const auto& check : c.checks) {
      Json k;
      k["name"] = check.name;
      if (!check.timing) {
        k["measured"] = check.measured;
        k["tolerance"] = check.tolerance;
      } else {
        k["limit"] = check.tolerance;
      }
      k["passed"] = check.passed;
      checks.push_back(std::move(k));
    }
    cj["checks"] = std::move(checks);
    list.push_back(std::move(cj));
  }
  j["criteria"] = std::move(list);
  return j;
}

Report run(std::uint64_t seed) {
  const auto start = Clock::now();
  Report report;
  report.seed = seed;
  report.criteria = core(seed);

  Report first{seed, report.criteria, 0.0};
  Report second{seed, core(seed), 0.0};
  const bool identical = dump(first.json()) == dump(second.json());
  Criterion determinism{8, "determinism", {holds("identical_reports", identical)}};
  report.criteria.push_back(std::move(determinism));
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::string summary_line(const Criterion& criterion) {
  std::string line = (criterion.passed() ? "PASS" : "FAIL");
  line += " [" + std::to_string(criterion.id) + "] " + criterion.title + ":";
  for (const auto& check : criterion.checks) {
    line += " " + check.name + "=";
    if (check.timing) {
      line += format_number(check.measured) + "<=" + format_number(check.tolerance);
    } else if (check.name.rfind("error: ", 0) == 0) {
      line.pop_back();
    } else {
      line += format_number(check.measured) + (check.passed ? "<=" : ">") + format_number(check.tolerance);
    }
  }
  return line;
}

}  // namespace mqpt::acceptance
