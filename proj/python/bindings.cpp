#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bimod/cli.hpp"
#include "bimod/error.hpp"
#include "bimod/examples.hpp"
#include "bimod/io.hpp"
#include "bimod/perturbation.hpp"
#include "bimod/weight_solver.hpp"

namespace py = pybind11;
using namespace bimod;

namespace {

using DimsList = std::vector<std::tuple<std::string, double, double, int>>;

DimensionData dims_of(const DimsList& list) {
  DimensionData d;
  for (const auto& [id, left, right, mult] : list) d.constituents.push_back({id, left, right, mult});
  return d;
}

Scope scope_of(const std::string& name) { return name == "full" ? Scope::full() : Scope::even_only(name); }

}  // namespace

PYBIND11_MODULE(_bimod, m) {
  m.doc() = "Weight functions, perturbations and TPC decisions for fusion systems.";

  // Messages start with the error kind, e.g. "Validation: ...".
  py::register_exception<Error>(m, "BimodError", PyExc_ValueError);

  m.def(
      "run",
      [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        std::ostringstream out, err;
        const int code = cli::run(args, in, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("input") = "", "Run a command line; returns (exit code, stdout, stderr).");

  m.def(
      "example",
      [](const std::string& kind, const std::map<std::string, std::string>& parameters) {
        auto k = example_kind_from_string(kind);
        if (!k) throw Error(ErrorKind::InvalidArgument, "unknown example kind '" + kind + "'");
        const ExampleDescriptor d{*k, parameters};
        return serialize_system(document_of(make_example(d), d));
      },
      py::arg("kind"), py::arg("parameters") = std::map<std::string, std::string>{},
      "Canonical JSON document of a built-in example.");

  m.def(
      "weight_space_dimension",
      [](const std::string& document, const std::string& scope) {
        return solve_weight_space(load_system(document).system, scope_of(scope)).dimension();
      },
      py::arg("document"), py::arg("scope") = "full", "scope is \"full\" or an algebra label for the even part.");

  m.def(
      "tpc",
      [](const std::string& document) {
        const auto doc = load_system(document);
        return canonical_dump(to_json(doc.system, is_tpc(doc.system)));
      },
      py::arg("document"), "TPC verdict as canonical JSON.");

  m.def("min_index", [](const DimsList& dims) { return min_index(dims_of(dims)); }, py::arg("dims"),
        "dims: list of (id, left, right, mult).");
  m.def("is_spherical", [](const DimsList& dims) { return is_spherical(dims_of(dims)); }, py::arg("dims"));
  m.def(
      "sphericalizing_weight", [](const DimsList& dims) { return sphericalizing_weight(dims_of(dims)).values; },
      py::arg("dims"));
}
