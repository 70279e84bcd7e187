// Copyright 2026 The qss-sim Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qss/adversary.hpp"
#include "qss/ghz.hpp"
#include "qss/measurement.hpp"
#include "qss/protocol.hpp"
#include "qss/report_json.hpp"
#include "qss/verify.hpp"

namespace py = pybind11;

namespace {

qss::ProtocolConfig make_config(int d, int n, std::optional<int> alpha, const std::string& alpha_mode,
                                std::uint64_t seed, std::optional<double> test_fraction) {
  qss::ProtocolConfig c;
  c.d = qss::Dim(d);
  c.n = n;
  c.alpha = alpha;
  if (alpha_mode == "fixed") {
    c.alpha_mode = qss::AlphaMode::Fixed;
  } else if (alpha_mode == "string") {
    c.alpha_mode = qss::AlphaMode::PerRound;
  } else {
    throw qss::ContractError("alpha_mode must be 'fixed' or 'string'");
  }
  if (test_fraction) c.test_fraction = *test_fraction;
  c.seed = seed;
  c.validate();
  return c;
}

qss::Direction direction(const std::string& text) { return qss::parse_direction(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Three-party d-level quantum secret sharing simulator.";

  py::register_exception<qss::ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<qss::ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<qss::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.attr("SCHEMA_VERSION") = qss::kSchemaVersion;

  m.def(
      "verify_json",
      [](int d_min, int d_max) {
        if (d_min > d_max) throw qss::ContractError("empty dimension range");
        std::vector<qss::DimensionCheck> checks;
        for (int d = d_min; d <= d_max; ++d) checks.push_back(qss::verify_dimension(qss::Dim(d)));
        return qss::verify_report_json(checks).dump();
      },
      py::arg("d_min"), py::arg("d_max"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "run_json",
      [](int d, int n, std::optional<int> alpha, const std::string& alpha_mode, const std::string& adversary,
         std::uint64_t seed, std::optional<double> test_fraction) {
        const auto config = make_config(d, n, alpha, alpha_mode, seed, test_fraction);
        auto strategy = qss::make_adversary(qss::parse_adversary(adversary), config.d);
        return qss::run_report_json(qss::run_protocol(config, strategy.get())).dump();
      },
      py::arg("d"), py::arg("n"), py::arg("alpha") = py::none(), py::arg("alpha_mode") = "fixed",
      py::arg("adversary") = "none", py::arg("seed") = 0, py::arg("test_fraction") = py::none(),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "attack_json",
      [](int d, int n, const std::string& adversary, std::int64_t trials, std::uint64_t seed, int threads,
         std::optional<double> test_fraction) {
        const auto config = make_config(d, n, std::nullopt, "fixed", seed, test_fraction);
        const auto kind = qss::parse_adversary(adversary);
        if (kind == qss::AdversaryKind::None) throw qss::ContractError("attack needs an adversary");
        return qss::attack_report_json(config, qss::estimate_detection(config, kind, trials, threads)).dump();
      },
      py::arg("d"), py::arg("n"), py::arg("adversary"), py::arg("trials"), py::arg("seed") = 0,
      py::arg("threads") = 1, py::arg("test_fraction") = py::none(), py::call_guard<py::gil_scoped_release>());

  m.def("detection_analytic", [](int d, int n) { return qss::detection_analytic(qss::Dim(d), n); }, py::arg("d"),
        py::arg("n"));

  m.def(
      "ghz_state",
      [](int d, int alpha) {
        return qss::Amplitudes(qss::ghz_closed_form({qss::Dim(d), alpha, qss::GhzForm::XYY}).amplitudes());
      },
      py::arg("d"), py::arg("alpha"), "Amplitudes of the XYY GHZ-like state, first qudit most significant.");

  m.def(
      "joint_distribution",
      [](int d, int alpha, const std::string& bob, const std::string& charlie) {
        const qss::Dim dim(d);
        const auto b = direction(bob), c = direction(charlie);
        const auto table = qss::joint_distribution(
            qss::GhzSpec(dim, alpha, qss::GhzForm::XYY),
            {&qss::alice_basis_for(b, c, dim), &qss::basis_for(b, dim), &qss::basis_for(c, dim)});
        return table.values();
      },
      py::arg("d"), py::arg("alpha"), py::arg("bob_dir"), py::arg("charlie_dir"),
      "Flattened p[(s d + t) d + u] with Alice's basis chosen from the given receiver directions.");

  m.def(
      "eigenspace_rank",
      [](int d, int alpha) { return qss::common_eigenspace(qss::Dim(d), qss::ZMod(alpha, qss::Dim(d))).rank; },
      py::arg("d"), py::arg("alpha"), py::call_guard<py::gil_scoped_release>());
}
