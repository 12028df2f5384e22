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

#include "mqpt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <toml.hpp>

#include "mqpt/compare.hpp"
#include "mqpt/gaussian_id.hpp"
#include "mqpt/moments.hpp"
#include "mqpt/nonclassicality.hpp"

namespace mqpt {

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::config, path + ": " + what);
}

Json toml_to_json(const toml::node& node) {
  if (const auto* t = node.as_table()) {
    Json out = Json::object();
    for (const auto& [key, value] : *t) out[std::string(key.str())] = toml_to_json(value);
    return out;
  }
  if (const auto* a = node.as_array()) {
    Json out = Json::array();
    for (const auto& value : *a) out.push_back(toml_to_json(value));
    return out;
  }
  if (const auto* v = node.as_integer()) return Json(v->get());
  if (const auto* v = node.as_floating_point()) return Json(v->get());
  if (const auto* v = node.as_boolean()) return Json(v->get());
  if (const auto* v = node.as_string()) return Json(v->get());
  throw Error(ErrorCode::config, "toml: dates and times are not supported");
}

const Json* find(const Json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const Json& section(const Json& config, const std::string& key) {
  static const Json empty = Json::object();
  const Json* s = find(config, key);
  if (!s) return empty;
  if (!s->is_object()) config_error(key, "expected a table");
  return *s;
}

int get_int(const Json& obj, const std::string& key, const std::string& path, int fallback) {
  const Json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) config_error(path + "." + key, "expected an integer");
  return v->get<int>();
}

double get_double(const Json& obj, const std::string& key, const std::string& path, double fallback) {
  const Json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) config_error(path + "." + key, "expected a number");
  return v->get<double>();
}

Complex get_complex(const Json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  config_error(path, "expected a number or [re, im]");
}

std::vector<Amplitudes> parse_probes(const Json& probes) {
  if (!probes.is_array()) config_error("probes", "expected an array of probes");
  std::vector<Amplitudes> out;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const std::string path = "probes[" + std::to_string(p) + "]";
    const Json& probe = probes[p];
    if (!probe.is_array() || probe.empty()) config_error(path, "expected an array with one amplitude per mode");
    Amplitudes alpha;
    for (std::size_t s = 0; s < probe.size(); ++s) alpha.push_back(get_complex(probe[s], path + "[" + std::to_string(s) + "]"));
    out.push_back(std::move(alpha));
  }
  return out;
}

StateConfig parse_state(const Json& state) {
  if (!state.is_object()) config_error("state", "expected a table");
  const Json* kind = find(state, "kind");
  if (!kind) config_error("state.kind", "missing required field");
  if (!kind->is_string()) config_error("state.kind", "expected a string");
  StateConfig s;
  s.kind = kind->get<std::string>();
  if (s.kind == "coherent") {
    const Json* alpha = find(state, "alpha");
    if (!alpha) config_error("state.alpha", "missing required field");
    s.alpha = get_complex(*alpha, "state.alpha");
  } else if (s.kind == "fock") {
    s.n = get_int(state, "n", "state", -1);
    if (s.n < 0) config_error("state.n", "required, must be >= 0");
  } else if (s.kind == "thermal") {
    s.mean_photons = get_double(state, "mean_photons", "state", -1.0);
    if (!(s.mean_photons >= 0.0)) config_error("state.mean_photons", "required, must be >= 0");
  } else if (s.kind == "squeezed_vacuum") {
    s.r = get_double(state, "r", "state", 0.0);
  } else {
    config_error("state.kind", "unknown state \"" + s.kind + "\" (coherent, fock, thermal, squeezed_vacuum)");
  }
  return s;
}

MomentTable state_table(const StateConfig& s, int cutoff) {
  if (s.kind == "coherent") return coherent_moments({s.alpha}, cutoff);
  if (s.kind == "fock") return fock_moments(s.n, cutoff);
  if (s.kind == "thermal") return thermal_moments(s.mean_photons, cutoff);
  return gaussian_moments(GaussianState::squeezed_vacuum(s.r), cutoff);
}

Json state_json(const StateConfig& s) {
  Json j;
  j["kind"] = s.kind;
  if (s.kind == "coherent") j["alpha"] = to_json(s.alpha);
  if (s.kind == "fock") j["n"] = s.n;
  if (s.kind == "thermal") j["mean_photons"] = s.mean_photons;
  if (s.kind == "squeezed_vacuum") j["r"] = s.r;
  return j;
}

Json index_json(const MomentIndex& index) {
  Json out = Json::array();
  for (int v : index.j) out.push_back(v);
  for (int v : index.k) out.push_back(v);
  return out;
}

Json entry_table(const ProcessTensor& estimated, const ProcessTensor& exact) {
  Json rows = Json::array();
  const int co = std::min(estimated.cutoff_out(), exact.cutoff_out());
  const int ci = std::min(estimated.cutoff_in(), exact.cutoff_in());
  for (std::size_t o = 0; o < estimated.out_box().size(); ++o) {
    const MomentIndex jk = estimated.out_index(o);
    if (*std::max_element(jk.j.begin(), jk.j.end()) > co || *std::max_element(jk.k.begin(), jk.k.end()) > co) continue;
    for (std::size_t i = 0; i < estimated.in_box().size(); ++i) {
      const MomentIndex mn = estimated.in_index(i);
      if (*std::max_element(mn.j.begin(), mn.j.end()) > ci || *std::max_element(mn.k.begin(), mn.k.end()) > ci) continue;
      const Complex a = estimated(o, i);
      const Complex b = exact.at(jk, mn);
      if (std::abs(a) < 1e-15 && std::abs(b) < 1e-15) continue;
      Json row;
      row["jk"] = index_json(jk);
      row["mn"] = index_json(mn);
      row["estimated"] = to_json(a);
      row["exact"] = to_json(b);
      row["abs_error"] = std::abs(a - b);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

Json noise_json(const ExperimentConfig& config) {
  return Json{{"sigma", config.sigma}, {"seed", config.seed}};
}

Json run_tomography(const ExperimentConfig& config, RunReport& report) {
  const ProcessSpec& spec = *config.process;
  const int modes = mode_count(spec);
  SamplingPlan plan = config.plan;
  ProbeResponse response = process_response(spec, config.cutoff_out);
  if (config.sigma > 0.0) response = noisy_response(response, config.sigma, config.seed);
  Estimate est = estimate_tensor(response, modes, plan, config.cutoff_out);

  Json j;
  j["experiment"] = "tomography";
  j["process"] = to_json(spec);
  j["plan"] = to_json(plan);
  j["cutoffs"] = Json{{"out", config.cutoff_out}, {"in", plan.max_order}};
  j["noise"] = noise_json(config);
  j["condition_number"] = est.condition_number;
  j["tensor"] = to_json(est.tensor);
  try {
    const ProcessTensor exact = catalog_tensor(spec, config.cutoff_out, plan.max_order);
    Json cmp = to_json(compare_tensors(est.tensor, exact));
    cmp["table"] = entry_table(est.tensor, exact);
    j["comparison"] = std::move(cmp);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_closed_form) throw;
    j["comparison"] = nullptr;
  }
  report.tensor = std::move(est.tensor);
  return j;
}

Json run_gaussian_id(const ExperimentConfig& config) {
  const ProcessSpec& spec = *config.process;
  std::optional<GaussianTriplet> truth = gaussian_triplet_of(spec);
  if (!truth) config_error("process.kind", "gaussian_id needs a Gaussian trace-preserving process, got " + kind_name(spec));
  const int modes = truth->modes();
  const std::vector<Amplitudes> probes = config.probes.empty() ? default_probes(modes) : config.probes;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    if (static_cast<int>(probes[p].size()) != modes) {
      config_error("probes[" + std::to_string(p) + "]", "expected " + std::to_string(modes) + " amplitude(s)");
    }
  }

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sigma = config.sigma;
  std::vector<Eigen::VectorXd> means;
  for (const auto& alpha : probes) {
    Eigen::VectorXd mu = gaussian_apply(*truth, GaussianState::coherent(alpha)).mean;
    if (sigma > 0.0) {
      for (Eigen::Index i = 0; i < mu.size(); ++i) mu(i) += sigma * normal(rng);
    }
    means.push_back(std::move(mu));
  }
  Eigen::MatrixXd cov = gaussian_apply(*truth, GaussianState::coherent(probes.front())).cov;
  if (sigma > 0.0) {
    for (Eigen::Index r = 0; r < cov.rows(); ++r) {
      for (Eigen::Index c = r; c < cov.cols(); ++c) {
        const double d = sigma * normal(rng);
        cov(r, c) += d;
        if (c != r) cov(c, r) += d;
      }
    }
  }
  const GaussianIdentification id = identify_gaussian(probes, means, cov);

  Json j;
  j["experiment"] = "gaussian_id";
  j["process"] = to_json(spec);
  Json pj = Json::array();
  for (const auto& alpha : probes) {
    Json a = Json::array();
    for (Complex v : alpha) a.push_back(to_json(v));
    pj.push_back(std::move(a));
  }
  j["probes"] = std::move(pj);
  j["noise"] = noise_json(config);
  Json triplet = to_json(id.triplet);
  triplet["cond"] = id.condition_number;
  j["triplet"] = std::move(triplet);
  const double es = (id.triplet.S - truth->S).cwiseAbs().maxCoeff();
  const double ee = (id.triplet.E_noise - truth->E_noise).cwiseAbs().maxCoeff();
  const double ed = (id.triplet.D - truth->D).cwiseAbs().maxCoeff();
  j["comparison"] = Json{{"max_abs_error", std::max({es, ee, ed})}, {"S", es}, {"E_noise", ee}, {"D", ed}};
  return j;
}

Json run_catalog(const ExperimentConfig& config, RunReport& report) {
  const ProcessSpec& spec = *config.process;
  ProcessTensor tensor = catalog_tensor(spec, config.cutoff_out, config.cutoff_in);
  Json j;
  j["experiment"] = "catalog_dump";
  j["process"] = to_json(spec);
  j["tensor"] = to_json(tensor);
  report.tensor = std::move(tensor);
  return j;
}

Json run_diagnostics(const ExperimentConfig& config) {
  const StateConfig& state = *config.state;
  MomentTable table = state_table(state, config.cutoff_in);
  Json j;
  j["experiment"] = "diagnostics";
  j["state"] = state_json(state);
  if (config.process) {
    j["process"] = to_json(*config.process);
    table = apply_tensor(catalog_tensor(*config.process, config.cutoff_out, config.cutoff_in), table);
  }
  j["moments"] = to_json(table);
  j["diagnostics"] = to_json(diagnose(table));
  return j;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::tomography: return "tomography";
    case ExperimentKind::gaussian_id: return "gaussian_id";
    case ExperimentKind::catalog_dump: return "catalog_dump";
    case ExperimentKind::diagnostics: return "diagnostics";
  }
  return "unknown";
}

Json load_config_file(const std::string& path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, path + ": cannot open config file");
  if (ext == ".json") {
    try {
      return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::config, path + ": " + e.what());
    }
  }
  if (ext == ".toml") {
    try {
      return toml_to_json(toml::parse(in, path));
    } catch (const toml::parse_error& e) {
      std::ostringstream os;
      os << path << ":" << e.source().begin.line << ": " << e.description();
      throw Error(ErrorCode::config, os.str());
    }
  }
  throw Error(ErrorCode::config, path + ": config must end in .json or .toml");
}

void apply_override(Json& config, const std::string& dotted_path, const std::string& value) {
  if (dotted_path.empty()) throw Error(ErrorCode::config, "override: empty field path");
  Json* node = &config;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted_path.find('.', start);
    const std::string key = dotted_path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw Error(ErrorCode::config, dotted_path + ": empty path component");
    if (!node->is_object()) {
      if (!node->is_null()) throw Error(ErrorCode::config, dotted_path + ": " + key + " is not inside a table");
      *node = Json::object();
    }
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  Json parsed = Json::parse(value, nullptr, false);
  *node = parsed.is_discarded() ? Json(value) : std::move(parsed);
}

ExperimentConfig parse_config(const Json& config) {
  if (!config.is_object()) config_error("config", "expected a table at top level");
  ExperimentConfig out;

  const Json* experiment = find(config, "experiment");
  if (!experiment) config_error("experiment", "missing required field");
  if (!experiment->is_string()) config_error("experiment", "expected a string");
  const std::string kind = experiment->get<std::string>();
  if (kind == "tomography") {
    out.experiment = ExperimentKind::tomography;
  } else if (kind == "gaussian_id") {
    out.experiment = ExperimentKind::gaussian_id;
  } else if (kind == "catalog_dump") {
    out.experiment = ExperimentKind::catalog_dump;
  } else if (kind == "diagnostics") {
    out.experiment = ExperimentKind::diagnostics;
  } else {
    config_error("experiment", "unknown experiment \"" + kind + "\" (tomography, gaussian_id, catalog_dump, diagnostics)");
  }

  if (const Json* p = find(config, "process")) {
    out.process = process_spec_from_json(*p, "process");
  } else if (out.experiment != ExperimentKind::diagnostics) {
    config_error("process", "missing required section");
  }

  const Json& cutoffs = section(config, "cutoffs");
  out.cutoff_out = get_int(cutoffs, "out", "cutoffs", 4);
  out.cutoff_in = get_int(cutoffs, "in", "cutoffs", 4);
  if (out.cutoff_out < 0) config_error("cutoffs.out", "must be >= 0");
  if (out.cutoff_in < 0) config_error("cutoffs.in", "must be >= 0");

  const Json& noise = section(config, "noise");
  out.sigma = get_double(noise, "sigma", "noise", 0.0);
  if (!(out.sigma >= 0.0)) config_error("noise.sigma", "must be >= 0");
  if (const Json* seed = find(noise, "seed")) {
    if (!seed->is_number_integer()) config_error("noise.seed", "expected a non-negative integer");
    if (seed->is_number_unsigned()) {
      out.seed = seed->get<std::uint64_t>();
    } else {
      const auto s = seed->get<std::int64_t>();
      if (s < 0) config_error("noise.seed", "expected a non-negative integer");
      out.seed = static_cast<std::uint64_t>(s);
    }
  }

  if (const Json* probes = find(config, "probes")) out.probes = parse_probes(*probes);

  if (const Json* state = find(config, "state")) {
    out.state = parse_state(*state);
  } else if (out.experiment == ExperimentKind::diagnostics) {
    config_error("state", "missing required section");
  }

  const Json& output = section(config, "output");
  if (const Json* path = find(output, "path")) {
    if (!path->is_string()) config_error("output.path", "expected a string");
    out.output_path = path->get<std::string>();
  }
  if (const Json* format = find(output, "format")) {
    if (*format == "json") {
      out.format = OutputFormat::json;
    } else if (*format == "csv") {
      out.format = OutputFormat::csv;
    } else {
      config_error("output.format", "expected \"json\" or \"csv\"");
    }
  }
  if (out.format == OutputFormat::csv && out.experiment != ExperimentKind::tomography &&
      out.experiment != ExperimentKind::catalog_dump) {
    config_error("output.format", "csv is only available for tomography and catalog_dump");
  }

  if (out.experiment == ExperimentKind::tomography) {
    const Json& plan = section(config, "plan");
    const int modes = mode_count(*out.process);
    const int order = get_int(plan, "max_order", "plan", out.cutoff_in);
    if (order < 0) config_error("plan.max_order", "must be >= 0");
    const double scale = get_double(plan, "radius_scale", "plan", 1.0);
    if (!(scale > 0.0)) config_error("plan.radius_scale", "must be > 0");
    out.plan = SamplingPlan::standard(order, modes, scale);
    out.plan.angular_count = get_int(plan, "angular_count", "plan", out.plan.angular_count);
    out.plan.fit_terms = get_int(plan, "fit_terms", "plan", out.plan.fit_terms);
    out.plan.noise_floor = get_double(plan, "noise_floor", "plan", out.plan.noise_floor);
    if (const Json* radii = find(plan, "radii")) {
      if (!radii->is_array()) config_error("plan.radii", "expected an array of numbers");
      out.plan.radii.clear();
      for (std::size_t i = 0; i < radii->size(); ++i) {
        if (!(*radii)[i].is_number()) config_error("plan.radii[" + std::to_string(i) + "]", "expected a number");
        out.plan.radii.push_back((*radii)[i].get<double>());
      }
    }
    try {
      out.plan.validate();
    } catch (const Error& e) {
      config_error("plan", e.what());
    }
  }
  return out;
}

std::string RunReport::render(OutputFormat format) const {
  if (format == OutputFormat::csv) {
    if (!tensor) throw Error(ErrorCode::config, "output.format: this experiment has no tensor to export as csv");
    return tensor_csv(*tensor);
  }
  return dump(json);
}

RunReport run(const ExperimentConfig& config) {
  RunReport report;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (config.experiment) {
      case ExperimentKind::tomography: report.json = run_tomography(config, report); break;
      case ExperimentKind::gaussian_id: report.json = run_gaussian_id(config); break;
      case ExperimentKind::catalog_dump: report.json = run_catalog(config, report); break;
      case ExperimentKind::diagnostics: report.json = run_diagnostics(config); break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    throw Error(e.code(), std::string(to_string(config.experiment)) + ": " + e.what());
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!config.output_path.empty()) {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::config, "output.path: cannot write " + config.output_path);
    out << report.render(config.format);
  }
  return report;
}

}  // namespace mqpt
