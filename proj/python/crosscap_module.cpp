#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crosscap/commands.hpp"
#include "crosscap/parser.hpp"

namespace py = pybind11;
using namespace crosscap;

namespace {

py::tuple to_py(const CommandOutput& out) { return py::make_tuple(out.exit_code, out.data.dump(), out.text); }

template <CommandOutput (*Fn)(const std::string&, const CommandOptions&)>
py::tuple run_doc(const std::string& text, bool verify) {
  CommandOptions opt;
  opt.verify = verify;
  return to_py(guarded([&] { return Fn(text, opt); }));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Corank-1 map germ classification (compiled core)";

  py::register_exception<Error>(m, "CrosscapError", PyExc_ValueError);

  m.def("classify", &run_doc<cmd_classify>, py::arg("text"), py::arg("verify") = false);
  m.def("ruled", &run_doc<cmd_ruled>, py::arg("text"), py::arg("verify") = false);
  m.def("center", &run_doc<cmd_center>, py::arg("text"), py::arg("verify") = false);
  m.def("folded", &run_doc<cmd_folded>, py::arg("text"), py::arg("verify") = false);
  m.def("oracle", &run_doc<cmd_oracle>, py::arg("text"), py::arg("verify") = false);

  m.def(
      "fuzz",
      [](std::uint64_t seed, int trials, int degree, int bound, int order, int jobs) {
        FuzzOptions fo;
        fo.config = {seed, trials, bound, degree, order};
        fo.jobs = jobs;
        CommandOutput out;
        {
          py::gil_scoped_release release;
          out = guarded([&] { return cmd_fuzz(fo); });
        }
        return to_py(out);
      },
      py::arg("seed") = 1, py::arg("trials") = 100, py::arg("degree") = 3, py::arg("bound") = 9,
      py::arg("order") = kDefaultOrder, py::arg("jobs") = 1);

  m.def(
      "parse_poly",
      [](const std::string& src, int order) {
        const ParsedPoly p = parse_poly(src, order);
        return py::make_tuple(format_poly(p.jet), p.truncated);
      },
      py::arg("src"), py::arg("order") = kDefaultOrder);

  m.def("normalize_doc", [](const std::string& text) { return print_doc(parse_doc(text)); }, py::arg("text"));

  m.attr("DEFAULT_ORDER") = kDefaultOrder;
}
