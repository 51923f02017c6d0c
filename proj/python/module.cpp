#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwalknet/conditional_engine.hpp"
#include "qwalknet/estimator.hpp"
#include "qwalknet/exact_engine.hpp"
#include "qwalknet/observables.hpp"
#include "qwalknet/spectral.hpp"
#include "qwalknet/walker.hpp"

namespace py = pybind11;
using namespace qwalknet;

namespace {

CoinState to_coin(std::pair<cplx, cplx> c) { return {c.first, c.second}; }

py::dict distribution_dict(const Distribution& d) {
  py::dict out;
  out["labels"] = d.labels;
  out["probs"] = d.probs;
  return out;
}

}  // namespace

PYBIND11_MODULE(_qwalknet, m) {
  m.doc() = "Coined quantum walks on entangled ring networks";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "QwalknetError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);

  py::class_<NetworkSpec>(m, "NetworkSpec")
      .def(py::init(&NetworkSpec::make), py::arg("n_vertices"), py::arg("edge_alphas"))
      .def_static("homogeneous", &NetworkSpec::homogeneous, py::arg("n_vertices"), py::arg("alpha"))
      .def_property_readonly("n_vertices", &NetworkSpec::n_vertices)
      .def_property_readonly("edge_alphas",
                             [](const NetworkSpec& s) {
                               return std::vector<double>(s.edge_alphas().begin(), s.edge_alphas().end());
                             })
      .def("weights", [](const NetworkSpec& s) { return weights(s); })
      .def("__repr__", [](const NetworkSpec& s) { return "NetworkSpec(" + s.to_json().dump() + ")"; });

  py::class_<ConditionalEnsemble>(m, "Ensemble")
      .def_property_readonly("time", &ConditionalEnsemble::time)
      .def_property_readonly("walks", &ConditionalEnsemble::walks)
      .def("advance", &ConditionalEnsemble::advance, py::call_guard<py::gil_scoped_release>())
      .def("distribution", [](const ConditionalEnsemble& e) { return ensemble_distribution(e); })
      .def("walker_density", [](const ConditionalEnsemble& e) { return walker_density(e).entries; })
      .def("network_density", [](const ConditionalEnsemble& e) { return network_density(e).entries; })
      .def("gram", [](const ConditionalEnsemble& e) { return gram(e); });

  m.def(
      "init_ensemble",
      [](const NetworkSpec& spec, std::pair<cplx, cplx> coin0, int n0) { return init_ensemble(spec, to_coin(coin0), n0); },
      py::arg("spec"), py::arg("coin0"), py::arg("n0") = 0);

  m.def(
      "exact_distributions",
      [](const NetworkSpec& spec, std::pair<cplx, cplx> coin0, int n0, int steps) {
        FullState s = init_full(spec, to_coin(coin0), n0);
        std::vector<std::vector<double>> out = {position_distribution_full(s)};
        for (int t = 0; t < steps; ++t) {
          s = step_full(s);
          out.push_back(position_distribution_full(s));
        }
        return out;
      },
      py::arg("spec"), py::arg("coin0"), py::arg("n0"), py::arg("steps"), "p(t) for t = 0..steps from the full engine");

  m.def("von_neumann_entropy", py::overload_cast<const CMatrix&>(&von_neumann_entropy), py::arg("rho"));
  m.def("negativity_qubits", &negativity_qubits, py::arg("rho"), py::arg("qubit_mask_a"));
  m.def(
      "network_negativity",
      [](const ConditionalEnsemble& e, int first_edge, int count) {
        return negativity(network_density(e), Bipartition::arc(e.n_vertices(), first_edge, count));
      },
      py::arg("ensemble"), py::arg("first_edge"), py::arg("count"));

  m.def(
      "stationary",
      [](const NetworkSpec& spec, std::pair<cplx, cplx> coin0, int n0, const std::string& method) {
        if (method != "full" && method != "conditional") throw Error("method must be 'full' or 'conditional'");
        Distribution pi;
        {
          py::gil_scoped_release release;
          pi = method == "full" ? stationary_full(spec, to_coin(coin0), n0).pi
                                : stationary_conditional(spec, to_coin(coin0), n0).pi;
        }
        return distribution_dict(pi);
      },
      py::arg("spec"), py::arg("coin0"), py::arg("n0") = 0, py::arg("method") = "conditional");

  m.def(
      "dcqw_line",
      [](std::pair<cplx, cplx> coin0, int steps) {
        const DcqwRun r = dcqw_run(Geometry::line, 0, to_coin(coin0), 0, steps);
        return py::make_tuple(r.labels, r.distribution);
      },
      py::arg("coin0"), py::arg("steps"));

  m.def(
      "sample_inhomogeneous",
      [](double mean_alpha, double sigma_fraction, std::uint64_t seed, int n) {
        return sample_inhomogeneous({mean_alpha, sigma_fraction, seed}, n);
      },
      py::arg("mean_alpha"), py::arg("sigma_fraction"), py::arg("seed"), py::arg("n_vertices"));

  m.def(
      "estimate_alpha",
      [](const NetworkSpec& truth, int shots_per_time, int horizon, std::uint64_t seed, std::vector<double> grid) {
        const int n = truth.n_vertices();
        const ReferenceCurve curve = build_reference_curve(n, grid);
        const auto p0 = origin_series(truth, CoinState::symmetric(), 0, horizon);
        const AlphaEstimate e = estimate_alpha(simulate_shots(p0, shots_per_time, seed), curve);
        py::dict out;
        out["alpha_hat"] = e.alpha_hat;
        out["ci"] = py::make_tuple(e.ci_low, e.ci_high);
        out["pi0_hat"] = e.pi0_hat;
        out["out_of_range"] = e.out_of_range;
        return out;
      },
      py::arg("truth"), py::arg("shots_per_time"), py::arg("horizon"), py::arg("seed"), py::arg("alpha_grid"));
}
