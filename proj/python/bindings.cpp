#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "prefmatch/cli.hpp"
#include "prefmatch/report.hpp"
#include "prefmatch/scenario.hpp"

namespace py = pybind11;
using namespace prefmatch;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact solver and verifier for preference evolution under stable matching";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line with the given arguments; returns (exit_code, stdout, stderr).");

  m.def("replication_cases", &replication_cases);

  m.def(
      "replicate_json",
      [](const std::string& id) {
        Replication r;
        {
          py::gil_scoped_release release;
          r = replicate(id);
        }
        return replication_json(r).dump();
      },
      py::arg("case_id"));

  m.def(
      "normalize_scenario",
      [](const std::string& text, bool allow_nonpositive) {
        ParseOptions o;
        o.allow_nonpositive = allow_nonpositive;
        return serialize_scenario(parse_scenario(text, o));
      },
      py::arg("text"), py::arg("allow_nonpositive") = false,
      "Parse scenario text and return its canonical serialization.");
}
