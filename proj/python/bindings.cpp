#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <tuple>

#include "tvdist/coupling.hpp"
#include "tvdist/distribution.hpp"
#include "tvdist/error.hpp"
#include "tvdist/estimator.hpp"
#include "tvdist/oracle.hpp"

namespace py = pybind11;

namespace {

tvdist::Assignment to_assignment(const std::vector<std::size_t>& values) {
  return tvdist::Assignment{values};
}

tvdist::EnumerationBudget budget(std::uint64_t max_states) {
  return tvdist::EnumerationBudget{max_states};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Total variation distance between product distributions";

  static py::exception<tvdist::Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const tvdist::Error& e) {
      py::object exc = error;
      py::object instance = exc(std::string(tvdist::to_string(e.kind())) + ": " + e.what());
      instance.attr("kind") = std::string(tvdist::to_string(e.kind()));
      instance.attr("coordinate") =
          e.coordinate() ? py::cast(*e.coordinate()) : py::none();
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<tvdist::ProductDistribution>(m, "ProductDistribution")
      .def(py::init([](std::vector<std::vector<double>> raw) {
             return tvdist::validate(std::move(raw));
           }),
           py::arg("marginals"))
      .def_property_readonly("dimension", &tvdist::ProductDistribution::dimension)
      .def_property_readonly("domain_sizes", &tvdist::ProductDistribution::domain_sizes)
      .def_property_readonly("state_count", &tvdist::ProductDistribution::state_count)
      .def("to_list", &tvdist::ProductDistribution::to_raw)
      .def("__len__", &tvdist::ProductDistribution::dimension)
      .def("__eq__", [](const tvdist::ProductDistribution& a,
                        const tvdist::ProductDistribution& b) { return a == b; });

  m.def("validate", &tvdist::validate, py::arg("marginals"));
  m.def("point_mass",
        [](const tvdist::ProductDistribution& d, const std::vector<std::size_t>& omega) {
          return tvdist::point_mass(d, to_assignment(omega));
        },
        py::arg("dist"), py::arg("omega"));
  m.def("coordinate_tv",
        [](std::vector<double> p, std::vector<double> q) {
          return tvdist::coordinate_tv(tvdist::CategoricalMarginal::validated(std::move(p)),
                                       tvdist::CategoricalMarginal::validated(std::move(q)));
        },
        py::arg("p"), py::arg("q"));
  m.def("are_identical", &tvdist::are_identical, py::arg("p"), py::arg("q"));

  py::class_<tvdist::GreedyCouplingStats>(m, "GreedyCouplingStats")
      .def_readonly("d", &tvdist::GreedyCouplingStats::d)
      .def_readonly("suffix", &tvdist::GreedyCouplingStats::suffix)
      .def_readonly("pr_diff", &tvdist::GreedyCouplingStats::pr_diff);
  m.def("build_stats", &tvdist::build_stats, py::arg("p"), py::arg("q"));
  m.def("sample_pi",
        [](const tvdist::ProductDistribution& p, const tvdist::ProductDistribution& q,
           std::uint64_t seed) {
          return tvdist::sample_pi(p, q, tvdist::build_stats(p, q), seed).values;
        },
        py::arg("p"), py::arg("q"), py::arg("seed"));

  m.def("sample_count", &tvdist::sample_count, py::arg("n"), py::arg("epsilon"),
        py::arg("delta"));
  m.def("estimator_f",
        [](const tvdist::ProductDistribution& p, const tvdist::ProductDistribution& q,
           const std::vector<std::size_t>& omega) {
          return tvdist::estimator_f(p, q, to_assignment(omega));
        },
        py::arg("p"), py::arg("q"), py::arg("omega"));

  py::class_<tvdist::EstimateResult>(m, "EstimateResult")
      .def_property_readonly("method",
                             [](const tvdist::EstimateResult& r) {
                               return std::string(tvdist::to_string(r.method));
                             })
      .def_readonly("estimate", &tvdist::EstimateResult::estimate)
      .def_readonly("mean_f", &tvdist::EstimateResult::mean_f)
      .def_readonly("samples_used", &tvdist::EstimateResult::samples_used)
      .def_readonly("pr_diff", &tvdist::EstimateResult::pr_diff)
      .def_readonly("per_coordinate_tv", &tvdist::EstimateResult::per_coordinate_tv)
      .def_readonly("elapsed_seconds", &tvdist::EstimateResult::elapsed_seconds)
      .def("__repr__", [](const tvdist::EstimateResult& r) {
        return "EstimateResult(estimate=" + std::to_string(r.estimate) +
               ", samples_used=" + std::to_string(r.samples_used) + ")";
      });

  m.def("estimate_tv",
        [](const tvdist::ProductDistribution& p, const tvdist::ProductDistribution& q,
           double epsilon, double delta, std::uint64_t seed,
           std::optional<std::uint64_t> samples, unsigned workers) {
          tvdist::EstimatorConfig config;
          config.epsilon = epsilon;
          config.delta = delta;
          config.seed = seed;
          config.samples_override = samples;
          config.workers = workers;
          py::gil_scoped_release release;
          return tvdist::estimate_tv(p, q, config);
        },
        py::arg("p"), py::arg("q"), py::arg("epsilon") = 0.1, py::arg("delta") = 0.05,
        py::arg("seed") = 0, py::arg("samples") = py::none(), py::arg("workers") = 1);
  m.def("naive_estimate_tv",
        [](const tvdist::ProductDistribution& p, const tvdist::ProductDistribution& q,
           std::uint64_t samples, std::uint64_t seed, unsigned workers) {
          py::gil_scoped_release release;
          return tvdist::naive_estimate_tv(p, q, samples, seed, workers);
        },
        py::arg("p"), py::arg("q"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("workers") = 1);

  constexpr std::uint64_t default_states = std::uint64_t{1} << 20;
  m.def("exact_tv",
        [](const tvdist::ProductDistribution& p, const tvdist::ProductDistribution& q,
           std::uint64_t max_states) { return tvdist::exact_tv(p, q, budget(max_states)); },
        py::arg("p"), py::arg("q"), py::arg("max_states") = default_states);
  m.def("exact_sum_positive_part",
        [](const tvdist::ProductDistribution& p, const tvdist::ProductDistribution& q,
           std::uint64_t max_states) {
          return tvdist::exact_sum_positive_part(p, q, budget(max_states));
        },
        py::arg("p"), py::arg("q"), py::arg("max_states") = default_states);
  m.def("exact_expectation_f",
        [](const tvdist::ProductDistribution& p, const tvdist::ProductDistribution& q,
           std::uint64_t max_states) {
          return tvdist::exact_expectation_f(p, q, budget(max_states));
        },
        py::arg("p"), py::arg("q"), py::arg("max_states") = default_states);
  m.def("exact_pi",
        [](const tvdist::ProductDistribution& p, const tvdist::ProductDistribution& q,
           std::uint64_t max_states) {
          py::dict out;
          for (const auto& [omega, mass] : tvdist::exact_pi(p, q, budget(max_states))) {
            out[py::tuple(py::cast(omega.values))] = mass;
          }
          return out;
        },
        py::arg("p"), py::arg("q"), py::arg("max_states") = default_states);
}
