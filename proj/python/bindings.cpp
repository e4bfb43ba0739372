/** @file bindings.cpp
 *  Python module exposing the main engine operations plus the full CLI.
 */
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conslaw/cli.hpp"
#include "conslaw/conslaw.hpp"
#include "conslaw/jetring.hpp"
#include "conslaw/psrecursion.hpp"
#include "conslaw/verify.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace conslaw;

namespace {

py::tuple py_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

py::dict py_solve_vd(int degree, const std::string& model) {
  VdSolution sol = solve_vd(degree, parse_model_text(model));
  py::dict d;
  d["degree"] = sol.degree;
  d["dim"] = sol.dim;
  py::list text, as_json;
  for (const auto& g : sol.kernel) {
    text.append(render(g, RenderFormat::Text));
    as_json.append(render(g, RenderFormat::Json));
  }
  d["generators"] = text;
  d["generators_json"] = as_json;
  return d;
}

py::dict py_build_law(int degree, const std::string& model,
                      const std::string& generator) {
  PotentialModel m = parse_model_text(model);
  DiffPoly P;
  if (generator.empty()) {
    VdSolution sol = solve_vd(degree, m);
    if (sol.dim == 0) throw std::invalid_argument("no generator at this degree");
    P = sol.kernel.front();
  } else {
    P = reduce(parse_expr(generator), m);
  }
  NormalFormLaw law = build_phi(P, degree, m);
  py::dict d;
  d["degree"] = law.degree;
  d["P"] = render(law.P, RenderFormat::Text);
  py::dict B;
  for (const auto& [ij, b] : law.B) {
    std::string key = std::to_string(ij.first) + "," + std::to_string(ij.second);
    B[py::str(key)] = render(b, RenderFormat::Text);
  }
  d["B"] = B;
  d["rho"] = render(law.rho, RenderFormat::Text);
  d["closure_residual_is_zero"] = law.closure_residual.is_zero();
  return d;
}

py::list py_ps_chain(int n, const std::string& beta) {
  PSChain chain = ps_chain(n, parse_expr(beta));
  py::list out;
  for (int i = 1; i <= n; ++i) out.append(render(chain.P_at(i), RenderFormat::Text));
  return out;
}

py::list py_classify(int degree) {
  ClassifyReport rep = classify(degree);
  py::list out;
  for (const auto& c : rep.conditions) {
    py::dict d;
    d["condition"] = render(c.condition, RenderFormat::Text);
    d["witness"] = render(c.witness, RenderFormat::Text);
    out.append(d);
  }
  return out;
}

std::string py_render(const std::string& expr, const std::string& format) {
  RenderFormat fmt = RenderFormat::Text;
  if (format == "latex") fmt = RenderFormat::Latex;
  else if (format == "json") fmt = RenderFormat::Json;
  else if (format != "text") throw std::invalid_argument("format must be text/latex/json");
  return render(parse_expr(expr), fmt);
}

py::list py_verify(int max_degree, bool numeric) {
  py::list out;
  for (const auto& r : acceptance_checks(max_degree, numeric)) {
    py::dict d;
    d["name"] = r.name;
    d["pass"] = r.pass;
    d["detail"] = r.detail;
    d["seconds"] = r.seconds;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_conslaw, m) {
  m.doc() = "Exact conservation-law engine for u_{z zbar} = -f(u)";
  m.attr("__version__") = "1.0.0";
  m.def("run", &py_run, py::arg("args"),
        "Run the CLI; returns (exit_code, stdout, stderr).");
  m.def("solve_vd", &py_solve_vd, py::arg("degree"), py::arg("model") = "generic",
        "Kernel of the linearized operator at the given weighted degree.");
  m.def("build_law", &py_build_law, py::arg("degree"), py::arg("model") = "generic",
        py::arg("generator") = "",
        "Normal-form conservation law (P, rho, B, closure flag).");
  m.def("ps_chain", &py_ps_chain, py::arg("n"), py::arg("beta") = "b",
        "Recursive chain P_1..P_n of odd-weight generators under f_uu = beta f.");
  m.def("classify", &py_classify, py::arg("degree"),
        "Rank-drop conditions on (l1, l2) for f_uu = l1 f_u + l2 f.");
  m.def("render", &py_render, py::arg("expr"), py::arg("format") = "text",
        "Parse an expression and re-render it (text/latex/json).");
  m.def("verify", &py_verify, py::arg("max_degree") = 7, py::arg("numeric") = true,
        "Run the acceptance criteria; returns a list of check reports.");
}
