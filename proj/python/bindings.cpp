/**
 * @file bindings.cpp
 * @brief Python module: instances, LP solve, cut generation, certificates,
 *        strengthening, the monoid solver and the evaluation sweep. JSON
 *        documents cross the boundary as strings.
 */
#include "vpcforge/commands.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace vpcforge;

namespace {

PipelineOptions make_options(bool strengthen, double tol_feas, double tol_frac, bool exact,
                             std::size_t exact_max_vars, std::size_t cobasis_cap) {
  PipelineOptions p;
  p.strengthen = strengthen;
  p.tol.feas = tol_feas;
  p.tol.frac = tol_frac;
  p.gmic.frac_tol = tol_frac;
  p.exact = exact;
  p.exact_max_vars = exact_max_vars;
  p.cobasis_cap = cobasis_cap;
  return p;
}

DisjunctionSource make_source(const std::string& disjunction, int leaves) {
  DisjunctionSource src;
  src.leaves = leaves;
  if (!disjunction.empty()) src.disjunction = Json::parse(disjunction);
  return src;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

#define VPC_OPTION_ARGS                                                                               \
  "tol_feas"_a = 1e-7, "tol_frac"_a = 1e-5, "exact"_a = true, "exact_max_vars"_a = std::size_t{50}, \
      "cobasis_cap"_a = std::size_t{2000}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "V-polyhedral disjunctive cuts, Farkas certificates and monoidal strengthening";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "VpcForgeError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_static("load", &load_instance, "path"_a, "Read a .json or .mps file")
      .def_static(
          "parse",
          [](const std::string& text, const std::string& format) {
            if (format != "json" && format != "mps") throw py::value_error("format must be 'json' or 'mps'");
            return parse_instance(text, format == "json" ? InstanceFormat::NativeJson : InstanceFormat::Mps);
          },
          "text"_a, "format"_a = "json")
      .def_property_readonly("name", [](const Instance& i) { return i.name; })
      .def_property_readonly("maximize", [](const Instance& i) { return i.maximize; })
      .def_property_readonly("num_vars", &Instance::num_vars)
      .def_property_readonly("num_rows", &Instance::num_rows)
      .def_property_readonly("var_names", [](const Instance& i) { return i.var_names; })
      .def_property_readonly("row_names", [](const Instance& i) { return i.row_names; })
      .def_property_readonly("integer_vars", &Instance::integer_vars)
      .def_property_readonly("standardized", [](const Instance& i) { return i.standardized; })
      .def("standardize", &standardize)
      .def("to_json", &serialize_instance)
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + i.name + ": " + std::to_string(i.num_vars()) + " vars, " +
               std::to_string(i.num_rows()) + " rows>";
      });

  m.def(
      "solve", [](const Instance& inst, bool ip) { return dump(solve_document(inst, ip)); }, "instance"_a,
      "ip"_a = false, "LP relaxation (and optionally the enumerated integer optimum) as JSON text");

  m.def(
      "cuts",
      [](const Instance& inst, int leaves, bool strengthen, std::uint64_t seed, double tol_feas, double tol_frac,
         bool exact, std::size_t exact_max_vars, std::size_t cobasis_cap) {
        const PipelineOptions opt = make_options(strengthen, tol_feas, tol_frac, exact, exact_max_vars, cobasis_cap);
        py::gil_scoped_release release;
        return dump(cuts_document(inst, leaves, opt, seed));
      },
      "instance"_a, "leaves"_a = 2, "strengthen"_a = false, "seed"_a = 0, VPC_OPTION_ARGS,
      "VPCs and GMICs as JSON text");

  m.def(
      "certify",
      [](const Instance& inst, const std::string& cuts_doc, const std::string& disjunction, int leaves,
         std::uint64_t seed, double tol_feas, double tol_frac, bool exact, std::size_t exact_max_vars,
         std::size_t cobasis_cap) {
        const PipelineOptions opt = make_options(false, tol_feas, tol_frac, exact, exact_max_vars, cobasis_cap);
        const Json doc = Json::parse(cuts_doc);
        const DisjunctionSource src = make_source(disjunction, leaves);
        py::gil_scoped_release release;
        return dump(certify_document(inst, doc, src, opt, seed));
      },
      "instance"_a, "cuts"_a, "disjunction"_a = "", "leaves"_a = 2, "seed"_a = 0, VPC_OPTION_ARGS,
      "Farkas certificates and validity verdicts as JSON text");

  m.def(
      "strengthen",
      [](const Instance& inst, const std::string& cuts_doc, const std::string& disjunction, int leaves,
         std::uint64_t seed, double tol_feas, double tol_frac, bool exact, std::size_t exact_max_vars,
         std::size_t cobasis_cap) {
        const PipelineOptions opt = make_options(true, tol_feas, tol_frac, exact, exact_max_vars, cobasis_cap);
        const Json doc = Json::parse(cuts_doc);
        const DisjunctionSource src = make_source(disjunction, leaves);
        py::gil_scoped_release release;
        return dump(strengthen_document(inst, doc, src, opt, seed));
      },
      "instance"_a, "cuts"_a, "disjunction"_a = "", "leaves"_a = 2, "seed"_a = 0, VPC_OPTION_ARGS,
      "Monoidal strengthening of the given cuts as JSON text");

  m.def(
      "solve_monoid",
      [](const std::vector<double>& d, const std::vector<double>& s) {
        if (d.size() != s.size() || d.empty()) throw py::value_error("d and s must be nonempty and of equal length");
        const MonoidSolution sol = solve_monoid(MonoidInstance{d, s});
        return py::make_tuple(sol.z, sol.m);
      },
      "d"_a, "s"_a, "min over integer m with sum(m) >= 0 of max_t(-s_t + d_t m_t); returns (z, m)");

  m.def("gmi_coefficients", &gmi_coefficients, "rhs"_a, "abar"_a, "integer"_a,
        "GMI coefficients of x_B + sum abar_j x_j = rhs in the nonbasic space");

  py::class_<EvalReport>(m, "Report")
      .def("table", &report_table)
      .def("csv", &report_csv, "timing"_a = false)
      .def("json", &report_json, "timing"_a = false);

  m.def(
      "evaluate",
      [](const std::vector<std::filesystem::path>& paths, const std::vector<int>& leaves, bool strengthen, int jobs,
         std::uint64_t seed, double tol_feas, double tol_frac, bool exact, std::size_t exact_max_vars,
         std::size_t cobasis_cap) {
        std::vector<ExperimentInput> inputs;
        for (const auto& path : paths) {
          ExperimentInput in;
          in.name = path.stem().string();
          try {
            in.instance = load_instance(path);
          } catch (const Error& e) {
            in.load_error = e.what();
          }
          inputs.push_back(std::move(in));
        }
        ExperimentConfig ec;
        ec.leaf_counts = leaves;
        ec.pipeline = make_options(strengthen, tol_feas, tol_frac, exact, exact_max_vars, cobasis_cap);
        ec.jobs = jobs;
        ec.seed = seed;
        py::gil_scoped_release release;
        return run_experiment(inputs, ec);
      },
      "paths"_a, "leaves"_a = std::vector<int>{2, 4, 8, 16, 32, 64}, "strengthen"_a = false, "jobs"_a = 1,
      "seed"_a = 0, VPC_OPTION_ARGS, "Leaf-count sweep over instance files; failures are recorded per instance");
}
