#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "shukla/error.hpp"
#include "shukla/field.hpp"
#include "shukla/run.hpp"

namespace py = pybind11;

namespace {

// Single entry point shared with the CLI: same commands, same options, same
// exit-code contract.  Report output is returned as a string (JSON by
// default) so the python wrapper can parse it without a second schema.
py::tuple invoke(const std::string& command, const std::vector<std::string>& args,
                 const std::string& field, std::size_t n, std::size_t cap,
                 const std::string& format, std::uint64_t seed, bool lie,
                 const std::string& over_a) {
    std::ostringstream out, err;
    int code;
    try {
        shukla::RunConfig cfg;
        cfg.field = shukla::FieldSpec::parse(field);
        cfg.truncation = n;
        cfg.cap = cap;
        cfg.format = shukla::parse_format(format);
        cfg.seed = seed;
        cfg.lie = lie;
        cfg.over_a = over_a;
        cfg.command = command;
        cfg.args = args;
        code = shukla::run(cfg, out, err);
    } catch (const shukla::Error& e) {
        err << "error [" << e.code() << "]: " << e.what() << '\n';
        code = e.exit_code();
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        code = 2;
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact cohomology of algebra presentations over a commutative base";

    m.def("invoke", &invoke, py::arg("command"), py::arg("args"), py::arg("field") = "Q",
          py::arg("n") = 4, py::arg("cap") = shukla::kDefaultSizeCap, py::arg("format") = "json",
          py::arg("seed") = 42, py::arg("lie") = false, py::arg("over_a") = "",
          "Run a command. Returns (exit_code, stdout, stderr); exit code 0 is "
          "success, 1 a mathematical rejection, 2 an internal invariant "
          "failure, 64 a usage error.");

    m.attr("DEFAULT_SIZE_CAP") = py::int_(shukla::kDefaultSizeCap);
}
