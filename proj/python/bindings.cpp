#include <optional>
#include <stdexcept>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmloc/cli.hpp"

namespace py = pybind11;

namespace {

cmloc::Overrides make_overrides(std::optional<std::uint32_t> p, std::optional<std::uint64_t> seed,
                                std::optional<int> base, std::optional<int> buffer, std::optional<int> window,
                                std::optional<int> cap, std::optional<int> trials) {
  cmloc::Overrides o;
  o.p = p;
  o.seed = seed;
  o.base = base;
  o.buffer = buffer;
  o.window = window;
  o.cap = cap;
  o.trials = trials;
  return o;
}

py::tuple run_problem(const std::string& text, std::optional<std::uint32_t> p, std::optional<std::uint64_t> seed,
                      std::optional<int> base, std::optional<int> buffer, std::optional<int> window,
                      std::optional<int> cap, std::optional<int> trials) {
  const cmloc::ProblemFile f = cmloc::parse_problem(text);
  cmloc::RunResult r;
  {
    py::gil_scoped_release release;
    r = cmloc::run(f, make_overrides(p, seed, base, buffer, window, cap, trials));
  }
  return py::make_tuple(r.json, r.exit_code);
}

std::string fixture_text(const std::string& spec_text, std::optional<std::uint64_t> seed) {
  cmloc::FamilySpec spec = cmloc::parse_family_spec(spec_text);
  if (seed) spec.seed = *seed;
  return cmloc::format_problem(cmloc::emit_fixture(spec));
}

}  // namespace

PYBIND11_MODULE(_cmloc, m) {
  m.doc() = "Problem-file runner and family fixtures for local rings over F_p";

  static py::exception<cmloc::ProblemError> problem_error(m, "ProblemError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cmloc::ProblemError& e) {
      py::set_error(problem_error, e.what());
    } catch (const cmloc::ParseError& e) {
      py::set_error(problem_error, e.what());
    }
  });

  m.def("run_problem", &run_problem, py::arg("text"), py::kw_only(), py::arg("p") = py::none(),
        py::arg("seed") = py::none(), py::arg("base") = py::none(), py::arg("buffer") = py::none(),
        py::arg("window") = py::none(), py::arg("cap") = py::none(), py::arg("trials") = py::none(),
        "Run every task; returns (report_json, exit_code).");
  m.def(
      "format_problem", [](const std::string& text) { return cmloc::format_problem(cmloc::parse_problem(text)); },
      py::arg("text"), "Canonical text of a problem file.");
  m.def("fixture", &fixture_text, py::arg("spec"), py::kw_only(), py::arg("seed") = py::none(),
        "Problem file for a family spec such as 'kind=hypersurface-sci vars=x,y g=x u=y n=0..3'.");
  m.def(
      "task_verbs",
      [] {
        py::dict d;
        for (const auto& [verb, arity] : cmloc::task_verbs()) d[py::str(verb)] = arity;
        return d;
      },
      "Task verbs and their argument counts (-1: one or more).");
}
