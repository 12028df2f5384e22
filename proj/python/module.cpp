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

// Python bindings. Moment tables are complex arrays indexed [j_1..j_m, k_1..k_m];
// tensors are indexed [j.., k.., m.., n..]. Processes are described by the
// same dictionaries as the "process" section of a config file.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mqpt/experiment.hpp"
#include "mqpt/fock.hpp"
#include "mqpt/gaussian_id.hpp"
#include "mqpt/moments.hpp"
#include "mqpt/nonclassicality.hpp"
#include "mqpt/tomography.hpp"

namespace py = pybind11;
using mqpt::Complex;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

mqpt::Json to_json(const py::object& obj) {
  const std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return mqpt::Json::parse(text);
}

py::object from_json(const mqpt::Json& j) {
  return py::module_::import("json").attr("loads")(mqpt::dump(j));
}

mqpt::ProcessSpec spec_of(const py::dict& spec) { return mqpt::process_spec_from_json(to_json(spec)); }

CArray table_array(const mqpt::MomentTable& t) {
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(2 * t.modes()), t.cutoff() + 1);
  CArray out(shape);
  std::copy(t.values().begin(), t.values().end(), out.mutable_data());
  return out;
}

// Shape (c+1,)*2m; the mode count is half the number of axes.
mqpt::MomentTable array_table(const CArray& a) {
  if (a.ndim() == 0 || a.ndim() % 2 != 0) throw py::value_error("moment array needs 2m axes");
  const auto extent = a.shape(0);
  for (py::ssize_t d = 0; d < a.ndim(); ++d) {
    if (a.shape(d) != extent) throw py::value_error("moment array axes must have equal length");
  }
  mqpt::MomentTable t(static_cast<int>(a.ndim() / 2), static_cast<int>(extent - 1));
  std::copy(a.data(), a.data() + a.size(), &t[0]);
  return t;
}

CArray tensor_array(const mqpt::ProcessTensor& t) {
  std::vector<py::ssize_t> shape;
  for (int d = 0; d < 2 * t.modes(); ++d) shape.push_back(t.cutoff_out() + 1);
  for (int d = 0; d < 2 * t.modes(); ++d) shape.push_back(t.cutoff_in() + 1);
  CArray out(shape);
  Complex* p = out.mutable_data();
  const std::size_t in = t.in_box().size();
  for (std::size_t o = 0; o < t.out_box().size(); ++o)
    for (std::size_t i = 0; i < in; ++i) p[o * in + i] = t(o, i);
  return out;
}

mqpt::ProcessTensor array_tensor(const CArray& a) {
  if (a.ndim() == 0 || a.ndim() % 4 != 0) throw py::value_error("tensor array needs 4m axes");
  const int modes = static_cast<int>(a.ndim() / 4);
  const auto co = a.shape(0), ci = a.shape(2 * modes);
  for (int d = 0; d < 2 * modes; ++d) {
    if (a.shape(d) != co || a.shape(2 * modes + d) != ci) throw py::value_error("tensor axes must match per side");
  }
  mqpt::ProcessTensor t(modes, static_cast<int>(co - 1), static_cast<int>(ci - 1));
  const Complex* p = a.data();
  const std::size_t in = t.in_box().size();
  for (std::size_t o = 0; o < t.out_box().size(); ++o)
    for (std::size_t i = 0; i < in; ++i) t(o, i) = p[o * in + i];
  return t;
}

mqpt::FockTensor fock_of(const CArray& a) {
  const auto t = array_tensor(a);
  if (t.modes() != 1 || t.cutoff_in() != t.cutoff_out()) throw py::value_error("Fock tensor must be square [L+1]*4");
  const int L = t.cutoff_out();
  mqpt::FockTensor f(L);
  for (int j = 0; j <= L; ++j)
    for (int k = 0; k <= L; ++k)
      for (int m = 0; m <= L; ++m)
        for (int n = 0; n <= L; ++n) f.set(j, k, m, n, t.at(j, k, m, n));
  return f;
}

mqpt::Amplitudes amplitudes(const py::object& alpha) {
  if (py::isinstance<py::sequence>(alpha) && !py::isinstance<py::str>(alpha)) return alpha.cast<mqpt::Amplitudes>();
  return {alpha.cast<Complex>()};
}

}  // namespace

PYBIND11_MODULE(mqpt, m) {
  m.doc() = "Coherent-state process tomography in the normally ordered moment basis";

  static py::exception<mqpt::Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const mqpt::Error& e) {
      py::set_error(error, (std::string(mqpt::to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("coherent_moments", [](const py::object& alpha, int cutoff) { return table_array(mqpt::coherent_moments(amplitudes(alpha), cutoff)); },
        py::arg("alpha"), py::arg("cutoff") = mqpt::kDefaultCutoff);
  m.def("fock_moments", [](int n, int cutoff) { return table_array(mqpt::fock_moments(n, cutoff)); }, py::arg("n"),
        py::arg("cutoff") = mqpt::kDefaultCutoff);
  m.def("thermal_moments", [](double mean, int cutoff) { return table_array(mqpt::thermal_moments(mean, cutoff)); },
        py::arg("mean_photons"), py::arg("cutoff") = mqpt::kDefaultCutoff);
  m.def(
      "gaussian_moments",
      [](const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, int cutoff) {
        return table_array(mqpt::gaussian_moments(mqpt::GaussianState(mean, cov), cutoff));
      },
      py::arg("mean"), py::arg("cov"), py::arg("cutoff") = mqpt::kDefaultCutoff);
  m.def("apply_tensor", [](const CArray& tensor, const CArray& moments) {
    return table_array(mqpt::apply_tensor(array_tensor(tensor), array_table(moments)));
  });

  m.def("catalog_tensor", [](const py::dict& spec, int cutoff_out, int cutoff_in) {
    return tensor_array(mqpt::catalog_tensor(spec_of(spec), cutoff_out, cutoff_in));
  }, py::arg("process"), py::arg("cutoff_out"), py::arg("cutoff_in"));
  m.def("output_moments", [](const py::dict& spec, const py::object& alpha, int cutoff) {
    return table_array(mqpt::output_table(spec_of(spec), amplitudes(alpha), cutoff));
  }, py::arg("process"), py::arg("alpha"), py::arg("cutoff"));

  m.def(
      "estimate_tensor",
      [](const py::object& process, int cutoff_out, int max_order, int modes, double sigma, std::uint64_t seed,
         double radius_scale) {
        mqpt::ProbeResponse response;
        if (py::isinstance<py::dict>(process)) {
          const auto spec = spec_of(process.cast<py::dict>());
          modes = mqpt::mode_count(spec);
          response = mqpt::process_response(spec, cutoff_out);
        } else {
          response = [process](const mqpt::Amplitudes& alpha) {
            py::gil_scoped_acquire gil;
            return array_table(process(alpha).cast<CArray>());
          };
        }
        if (sigma > 0.0) response = mqpt::noisy_response(response, sigma, seed);
        const auto est =
            mqpt::estimate_tensor(response, modes, mqpt::SamplingPlan::standard(max_order, modes, radius_scale), cutoff_out);
        return py::make_tuple(tensor_array(est.tensor), est.condition_number);
      },
      py::arg("process"), py::arg("cutoff_out"), py::arg("max_order"), py::arg("modes") = 1, py::arg("sigma") = 0.0,
      py::arg("seed") = 0, py::arg("radius_scale") = 1.0,
      "Estimate a tensor from a process dict or from a callable alpha -> moment array.");

  m.def("default_probes", &mqpt::default_probes, py::arg("modes"));
  m.def(
      "identify_gaussian",
      [](const std::vector<mqpt::Amplitudes>& probes, const std::vector<Eigen::VectorXd>& means,
         const Eigen::MatrixXd& cov) {
        const auto id = mqpt::identify_gaussian(probes, means, cov);
        py::dict out;
        out["S"] = id.triplet.S;
        out["E_noise"] = id.triplet.E_noise;
        out["D"] = id.triplet.D;
        out["cond"] = id.condition_number;
        return out;
      },
      py::arg("probes"), py::arg("output_means"), py::arg("output_cov"));

  m.def("mandel_q", [](const CArray& t) { return mqpt::mandel_q(array_table(t)); });
  m.def("quadrature_variance_x", [](const CArray& t) { return mqpt::quadrature_variance_x(array_table(t)); });
  m.def("q_after_nla", [](double g, double p, const CArray& t) { return mqpt::q_after_nla(g, p, array_table(t)); },
        py::arg("g"), py::arg("p_succ"), py::arg("moments"));
  m.def("decoherence_variance", &mqpt::decoherence_variance, py::arg("n_bath"), py::arg("gamma"), py::arg("tau"));

  m.def(
      "fock_to_moment",
      [](const CArray& fock, int cutoff_out, int cutoff_in, double tolerance) {
        if (fock.ndim() != 4) throw py::value_error("Fock tensor must have 4 axes [j, k, m, n]");
        const auto conv = mqpt::fock_to_moment(fock_of(fock), cutoff_out, cutoff_in, tolerance);
        return py::make_tuple(tensor_array(conv.tensor), conv.tail_estimate);
      },
      py::arg("fock"), py::arg("cutoff_out"), py::arg("cutoff_in"), py::arg("tolerance") = mqpt::kDefaultTailTolerance);
  m.def(
      "moment_to_fock",
      [](const CArray& tensor, int cutoff) { return tensor_array(mqpt::moment_to_fock(array_tensor(tensor), cutoff).data()); },
      py::arg("tensor"), py::arg("cutoff"));

  m.def(
      "run",
      [](const py::dict& config) {
        const auto report = mqpt::run(mqpt::parse_config(to_json(config)));
        return from_json(report.json);
      },
      py::arg("config"), "Run an experiment config (same schema as the CLI) and return the report.");
}
