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

#include "mqpt/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mqpt {

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::config, path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) config_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) config_error(path + "." + key, "missing required field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) config_error(path, "expected a number");
  return j.get<double>();
}

double number_field(const Json& obj, const std::string& key, const std::string& path) {
  return number(field(obj, key, path), path + "." + key);
}

double number_or(const Json& obj, const std::string& key, const std::string& path, double fallback) {
  return obj.contains(key) ? number_field(obj, key, path) : fallback;
}

int integer_field(const Json& obj, const std::string& key, const std::string& path, int fallback, bool required) {
  if (!obj.contains(key)) {
    if (required) config_error(path + "." + key, "missing required field");
    return fallback;
  }
  const Json& j = obj.at(key);
  if (!j.is_number_integer()) config_error(path + "." + key, "expected an integer");
  return j.get<int>();
}

Complex complex_value(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  config_error(path, "expected a number or [re, im]");
}

Eigen::MatrixXd matrix_value(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) config_error(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) config_error(rp, "rows must have equal length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

Eigen::VectorXd vector_value(const Json& j, const std::string& path) {
  if (!j.is_array()) config_error(path, "expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Json index_array(const std::vector<int>& a, const std::vector<int>& b) {
  Json out = Json::array();
  for (int v : a) out.push_back(v);
  for (int v : b) out.push_back(v);
  return out;
}

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(out, j[i], depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json to_json(Complex value) { return Json::array({value.real(), value.imag()}); }

Json to_json(const Eigen::MatrixXd& matrix) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) row.push_back(matrix(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Eigen::VectorXd& vector) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < vector.size(); ++i) out.push_back(vector(i));
  return out;
}

Json to_json(const MomentTable& table) {
  Json j;
  j["modes"] = table.modes();
  j["cutoff"] = table.cutoff();
  Json entries = Json::array();
  for (std::size_t f = 0; f < table.size(); ++f) {
    const Complex v = table[f];
    if (std::abs(v) < 1e-15) continue;
    const MomentIndex idx = table.index_of(f);
    Json e;
    e["j"] = idx.j;
    e["k"] = idx.k;
    e["re"] = v.real();
    e["im"] = v.imag();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  if (const auto& info = table.propagation()) {
    Json p;
    p["summation_cutoff"] = info->summation_cutoff;
    p["truncated"] = info->truncated;
    if (info->truncated) p["warning"] = info->warning;
    j["propagation"] = std::move(p);
  }
  return j;
}

Json to_json(const ProcessTensor& tensor) {
  Json j;
  j["modes"] = tensor.modes();
  j["cutoff_in"] = tensor.cutoff_in();
  j["cutoff_out"] = tensor.cutoff_out();
  Json entries = Json::array();
  for (std::size_t o = 0; o < tensor.out_box().size(); ++o) {
    const MomentIndex out = tensor.out_index(o);
    for (std::size_t i = 0; i < tensor.in_box().size(); ++i) {
      const Complex v = tensor(o, i);
      if (std::abs(v) < 1e-15) continue;
      const MomentIndex in = tensor.in_index(i);
      Json e;
      e["jk"] = index_array(out.j, out.k);
      e["mn"] = index_array(in.j, in.k);
      e["re"] = v.real();
      e["im"] = v.imag();
      entries.push_back(std::move(e));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const GaussianTriplet& triplet) {
  Json j;
  j["S"] = to_json(triplet.S);
  j["E_noise"] = to_json(triplet.E_noise);
  j["D"] = to_json(triplet.D);
  return j;
}

Json to_json(const TensorComparison& c) {
  Json j;
  j["max_abs_error"] = c.max_abs_error;
  j["frobenius_error"] = c.frobenius_error;
  j["worst"] = Json{{"jk", index_array(c.worst_out.j, c.worst_out.k)}, {"mn", index_array(c.worst_in.j, c.worst_in.k)}};
  j["cutoff_out"] = c.cutoff_out;
  j["cutoff_in"] = c.cutoff_in;
  j["entries_compared"] = c.entries;
  return j;
}

Json to_json(const DiagnosticReport& report) {
  Json j;
  j["mandel_q"] = report.mandel_q ? Json(*report.mandel_q) : Json(nullptr);
  j["quadrature_variance_x"] = report.quadrature_variance_x;
  j["flags"] = Json{{"sub_poissonian", report.sub_poissonian}, {"squeezed_x", report.squeezed_x}};
  return j;
}

Json to_json(const SamplingPlan& plan) {
  Json j;
  j["max_order"] = plan.max_order;
  j["angular_count"] = plan.angular_count;
  j["fit_terms"] = plan.fit_terms;
  j["noise_floor"] = plan.noise_floor;
  j["radii"] = plan.radii;
  return j;
}

Json to_json(const ProcessSpec& spec) {
  Json j;
  j["kind"] = kind_name(spec);
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, process::Identity>) {
          j["modes"] = p.modes;
        } else if constexpr (std::is_same_v<P, process::Attenuation>) {
          j["eta"] = p.eta;
        } else if constexpr (std::is_same_v<P, process::Displacement>) {
          j["beta"] = to_json(p.beta);
        } else if constexpr (std::is_same_v<P, process::BeamSplitter>) {
          j["T"] = p.T;
          j["R"] = p.R;
        } else if constexpr (std::is_same_v<P, process::Nla>) {
          j["g"] = p.g;
          j["scissors"] = p.scissors;
          j["vacuum_branch"] = p.vacuum_branch == process::NlaVacuumBranch::include ? "include" : "exclude";
        } else if constexpr (std::is_same_v<P, process::Decoherence>) {
          j["n_bath"] = p.n_bath;
          j["gamma"] = p.gamma;
          j["tau"] = p.tau;
        } else if constexpr (std::is_same_v<P, process::GaussianChannel>) {
          j["S"] = to_json(p.triplet.S);
          j["E_noise"] = to_json(p.triplet.E_noise);
          j["D"] = to_json(p.triplet.D);
        }
      },
      spec);
  return j;
}

MomentTable moment_table_from_json(const Json& json) {
  const std::string path = "moment_table";
  MomentTable table(integer_field(json, "modes", path, 0, true), integer_field(json, "cutoff", path, 0, true));
  const Json& entries = field(json, "entries", path);
  if (!entries.is_array()) config_error(path + ".entries", "expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ep = path + ".entries[" + std::to_string(i) + "]";
    const Json& e = entries[i];
    table.set(MomentIndex(field(e, "j", ep).get<std::vector<int>>(), field(e, "k", ep).get<std::vector<int>>()),
              {number_field(e, "re", ep), number_field(e, "im", ep)});
  }
  return table;
}

ProcessTensor process_tensor_from_json(const Json& json) {
  const std::string path = "tensor";
  const int modes = integer_field(json, "modes", path, 0, true);
  ProcessTensor tensor(modes, integer_field(json, "cutoff_out", path, 0, true),
                       integer_field(json, "cutoff_in", path, 0, true));
  const Json& entries = field(json, "entries", path);
  if (!entries.is_array()) config_error(path + ".entries", "expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ep = path + ".entries[" + std::to_string(i) + "]";
    const Json& e = entries[i];
    const auto jk = field(e, "jk", ep).get<std::vector<int>>();
    const auto mn = field(e, "mn", ep).get<std::vector<int>>();
    if (jk.size() != static_cast<std::size_t>(2 * modes) || mn.size() != static_cast<std::size_t>(2 * modes)) {
      config_error(ep, "index length must be 2 * modes");
    }
    const auto half = static_cast<std::ptrdiff_t>(modes);
    tensor.set(MomentIndex({jk.begin(), jk.begin() + half}, {jk.begin() + half, jk.end()}),
               MomentIndex({mn.begin(), mn.begin() + half}, {mn.begin() + half, mn.end()}),
               {number_field(e, "re", ep), number_field(e, "im", ep)});
  }
  return tensor;
}

ProcessSpec process_spec_from_json(const Json& json, const std::string& path) {
  if (!json.is_object()) config_error(path, "expected an object");
  const Json& kind_json = field(json, "kind", path);
  if (!kind_json.is_string()) config_error(path + ".kind", "expected a string");
  const std::string kind = kind_json.get<std::string>();
  ProcessSpec spec;
  if (kind == "identity") {
    spec = process::Identity{integer_field(json, "modes", path, 1, false)};
  } else if (kind == "attenuation") {
    spec = process::Attenuation{number_field(json, "eta", path)};
  } else if (kind == "displacement") {
    spec = process::Displacement{complex_value(field(json, "beta", path), path + ".beta")};
  } else if (kind == "photon_add") {
    spec = process::PhotonAdd{};
  } else if (kind == "photon_sub") {
    spec = process::PhotonSub{};
  } else if (kind == "beam_splitter") {
    spec = process::BeamSplitter{number_field(json, "T", path), number_field(json, "R", path)};
  } else if (kind == "cat_generation") {
    spec = process::CatGeneration{};
  } else if (kind == "nla") {
    process::Nla p{number_field(json, "g", path), integer_field(json, "scissors", path, 1, true)};
    if (json.contains("vacuum_branch")) {
      const Json& vb = json.at("vacuum_branch");
      if (vb == "include") {
        p.vacuum_branch = process::NlaVacuumBranch::include;
      } else if (vb == "exclude") {
        p.vacuum_branch = process::NlaVacuumBranch::exclude;
      } else {
        config_error(path + ".vacuum_branch", "expected \"include\" or \"exclude\"");
      }
    }
    spec = p;
  } else if (kind == "decoherence") {
    spec = process::Decoherence{number_or(json, "n_bath", path, 0.0), number_field(json, "gamma", path),
                                number_field(json, "tau", path)};
  } else if (kind == "gaussian") {
    GaussianTriplet t;
    t.S = matrix_value(field(json, "S", path), path + ".S");
    t.E_noise = matrix_value(field(json, "E_noise", path), path + ".E_noise");
    t.D = vector_value(field(json, "D", path), path + ".D");
    spec = process::GaussianChannel{std::move(t)};
  } else {
    config_error(path + ".kind", "unknown process kind \"" + kind +
                                     "\" (identity, attenuation, displacement, photon_add, photon_sub, "
                                     "beam_splitter, cat_generation, nla, decoherence, gaussian)");
  }
  try {
    validate(spec);
  } catch (const Error& e) {
    config_error(path, e.what());
  }
  return spec;
}

std::string dump(const Json& json) {
  std::string out;
  write(out, json, 0);
  out += "\n";
  return out;
}

std::string tensor_csv(const ProcessTensor& tensor) {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
  };
  std::string out = "j,k,m,n,re,im\n";
  char buf[64];
  for (std::size_t o = 0; o < tensor.out_box().size(); ++o) {
    const MomentIndex jk = tensor.out_index(o);
    for (std::size_t i = 0; i < tensor.in_box().size(); ++i) {
      const Complex v = tensor(o, i);
      if (std::abs(v) < 1e-15) continue;
      const MomentIndex mn = tensor.in_index(i);
      out += join(jk.j) + "," + join(jk.k) + "," + join(mn.j) + "," + join(mn.k);
      std::snprintf(buf, sizeof buf, ",%.17g", v.real());
      out += buf;
      std::snprintf(buf, sizeof buf, ",%.17g\n", v.imag());
      out += buf;
    }
  }
  return out;
}

}  // namespace mqpt
