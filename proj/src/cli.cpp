/** @file cli.cpp */
#include "conslaw/cli.hpp"

#include "conslaw/conslaw.hpp"
#include "conslaw/forms.hpp"
#include "conslaw/jetring.hpp"
#include "conslaw/numcheck.hpp"
#include "conslaw/operators.hpp"
#include "conslaw/psrecursion.hpp"
#include "conslaw/symmetry.hpp"
#include "conslaw/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace conslaw {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Thrown by verb handlers to signal exit code 1 after output was emitted.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOpts {
  std::string out_path;
  bool latex{false};
  bool text{false};
};

void add_output_opts(CLI::App* sub, OutputOpts& opts) {
  sub->add_option("--out", opts.out_path, "Write output to FILE instead of stdout");
  auto* latex = sub->add_flag("--latex", opts.latex, "Render LaTeX instead of JSON");
  sub->add_flag("--text", opts.text, "Render plain text instead of JSON")->excludes(latex);
}

RenderFormat pick_format(const OutputOpts& o) {
  if (o.latex) return RenderFormat::Latex;
  if (o.text) return RenderFormat::Text;
  return RenderFormat::Json;
}

void emit(const OutputOpts& o, std::ostream& out, const std::string& payload) {
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + o.out_path);
    f << payload;
  } else {
    out << payload;
  }
}

ordered_json poly_json(const DiffPoly& p) {
  return ordered_json::parse(render(p, RenderFormat::Json));
}

ordered_json form_json(const DiffForm& w) {
  return ordered_json::parse(render(w, RenderFormat::Json));
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string strip_ws(const std::string& s) {
  std::string r;
  r.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) r.push_back(c);
  return r;
}

}  // namespace

PotentialModel parse_model_text(const std::string& raw) {
  std::string s = strip_ws(raw);
  if (s.empty() || s == "generic") return PotentialModel::generic();
  if (s.rfind("fuu=", 0) != 0)
    throw std::invalid_argument("model must be 'generic' or start with 'fuu='");
  std::string body = s.substr(4);
  auto ends_in_f = [](const std::string& t) {
    return t.size() >= 2 && t.compare(t.size() - 2, 2, "*f") == 0;
  };
  std::size_t split = std::string::npos;
  for (std::size_t i = 0; i + 3 < body.size(); ++i) {
    if (body.compare(i, 3, "*fu") == 0 && (body[i + 3] == '+' || body[i + 3] == '-')) {
      split = i;
      break;
    }
  }
  try {
    if (split != std::string::npos) {
      std::string e1 = body.substr(0, split);
      std::string rest = body.substr(split + 3);  // starts with '+' or '-'
      if (!ends_in_f(rest))
        throw std::invalid_argument("expected '<e1>*fu+<e2>*f'");
      std::string e2 = rest.substr(0, rest.size() - 2);
      if (!e2.empty() && e2[0] == '+') e2 = e2.substr(1);
      return PotentialModel::rule(parse_expr(e1), parse_expr(e2));
    }
    if (!ends_in_f(body))
      throw std::invalid_argument("expected '<expr>*f' or '<e1>*fu+<e2>*f'");
    return PotentialModel::rule(DiffPoly(), parse_expr(body.substr(0, body.size() - 2)));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("bad model '") + raw + "': " + e.what());
  }
}

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("empty integer list: '" + s + "'");
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty number list: '" + s + "'");
  return out;
}

// ----------------------------------------------------------------- verbs

int cmd_solve_vd(int degree, const std::string& model_text, unsigned seed,
                 const OutputOpts& opts, std::ostream& out, std::ostream& err) {
  PotentialModel m = parse_model_text(model_text);
  auto t0 = std::chrono::steady_clock::now();
  VdSolution sol = solve_vd(degree, m, seed);
  err << "[conslaw] solve-vd degree=" << degree << " dim=" << sol.dim << " ("
      << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
      << " s)\n";
  RenderFormat fmt = pick_format(opts);
  if (fmt == RenderFormat::Json) {
    ordered_json j;
    j["degree"] = sol.degree;
    j["dim"] = sol.dim;
    j["generators"] = ordered_json::array();
    for (const auto& g : sol.kernel) j["generators"].push_back(poly_json(g));
    emit(opts, out, dump(j));
  } else {
    std::ostringstream os;
    os << "degree " << sol.degree << "  dim " << sol.dim << "\n";
    for (const auto& g : sol.kernel) os << render(g, fmt) << "\n";
    emit(opts, out, os.str());
  }
  return 0;
}

int cmd_build_law(int degree, const std::string& model_text,
                  const std::string& generator_text, const OutputOpts& opts,
                  std::ostream& out, std::ostream& err) {
  PotentialModel m = parse_model_text(model_text);
  DiffPoly P;
  if (generator_text.empty()) {
    VdSolution sol = solve_vd(degree, m);
    if (sol.dim == 0) {
      err << "[conslaw] no generator exists at degree " << degree << "\n";
      return 1;
    }
    P = sol.kernel.front();
  } else {
    P = reduce(parse_expr(generator_text), m);
  }
  NormalFormLaw law;
  try {
    law = build_phi(P, degree, m);
  } catch (const std::invalid_argument& e) {
    err << "[conslaw] " << e.what() << "\n";
    return 1;
  }
  err << "[conslaw] build-law degree=" << degree
      << " closure_zero=" << (law.closure_residual.is_zero() ? "yes" : "no") << "\n";
  RenderFormat fmt = pick_format(opts);
  if (fmt == RenderFormat::Json) {
    ordered_json j;
    j["degree"] = law.degree;
    j["P"] = poly_json(law.P);
    j["rho"] = form_json(law.rho);
    j["B"] = ordered_json::object();
    for (const auto& [ij, b] : law.B) {
      std::string key = std::to_string(ij.first) + "," + std::to_string(ij.second);
      j["B"][key] = poly_json(b);
    }
    j["closure_residual_is_zero"] = law.closure_residual.is_zero();
    emit(opts, out, dump(j));
  } else {
    std::ostringstream os;
    os << "P = " << render(law.P, fmt) << "\n";
    os << "rho = " << render(law.rho, fmt) << "\n";
    for (const auto& [ij, b] : law.B)
      os << "B^{" << ij.first << "," << ij.second << "} = " << render(b, fmt) << "\n";
    os << "closure residual zero: " << (law.closure_residual.is_zero() ? "yes" : "no")
       << "\n";
    emit(opts, out, os.str());
  }
  if (!law.closure_residual.is_zero())
    throw VerificationFailure("closure residual is nonzero");
  return 0;
}

int cmd_ps_chain(int count, const std::string& beta_text, const OutputOpts& opts,
                 std::ostream& out, std::ostream& err) {
  DiffPoly beta = parse_expr(beta_text);
  PSChain chain = ps_chain(count, beta);
  bool identities_ok = true;
  for (int i = 1; i < count; ++i)
    if (!verify_ps(i, chain).ok) identities_ok = false;
  err << "[conslaw] ps-chain count=" << count
      << " identities_ok=" << (identities_ok ? "yes" : "no") << "\n";
  RenderFormat fmt = pick_format(opts);
  if (fmt == RenderFormat::Json) {
    ordered_json j;
    j["beta"] = poly_json(chain.beta);
    j["identities_ok"] = identities_ok;
    j["entries"] = ordered_json::array();
    for (int i = 1; i <= count; ++i) {
      ordered_json e;
      e["index"] = i;
      e["degree"] = 2 * i - 1;
      e["P"] = poly_json(chain.P_at(i));
      if (i < count) e["phi"] = poly_json(chain.phi_at(i));
      j["entries"].push_back(e);
    }
    emit(opts, out, dump(j));
  } else {
    std::ostringstream os;
    for (int i = 1; i <= count; ++i)
      os << "P_" << i << " = " << render(chain.P_at(i), fmt) << "\n";
    emit(opts, out, os.str());
  }
  if (!identities_ok) throw VerificationFailure("recursion identities failed");
  return 0;
}

int cmd_classify(int degree, const OutputOpts& opts, std::ostream& out,
                 std::ostream& err) {
  ClassifyReport rep = classify(degree);
  err << "[conslaw] classify degree=" << degree << " conditions=" << rep.conditions.size()
      << "\n";
  RenderFormat fmt = pick_format(opts);
  if (fmt == RenderFormat::Json) {
    ordered_json j;
    j["degree"] = rep.degree;
    j["conditions"] = ordered_json::array();
    for (const auto& c : rep.conditions) {
      ordered_json e;
      e["condition"] = poly_json(c.condition);
      e["witness"] = poly_json(c.witness);
      j["conditions"].push_back(e);
    }
    emit(opts, out, dump(j));
  } else {
    std::ostringstream os;
    for (const auto& c : rep.conditions)
      os << render(c.condition, fmt) << " = 0    witness: " << render(c.witness, fmt)
         << "\n";
    emit(opts, out, os.str());
  }
  return 0;
}

const char* noether_name(NoetherKind k) {
  switch (k) {
    case NoetherKind::NormalForm: return "normal-form";
    case NoetherKind::Classical: return "classical";
    case NoetherKind::Gap: return "gap";
  }
  return "unknown";
}

int cmd_symmetry_check(const std::string& generator_text, const std::string& model_text,
                       int max_index, const OutputOpts& opts, std::ostream& out,
                       std::ostream& err) {
  PotentialModel m = parse_model_text(model_text);
  DiffPoly g = reduce(parse_expr(generator_text), m);
  DiffPoly eg = E_op(g, m);
  bool solution = eg.is_zero();
  GenSymmetry v = evolutionary_vector(g, m, max_index + 2);
  bool all_zero = true;
  std::vector<DiffForm> residuals;
  for (int i = 0; i <= max_index; ++i) {
    residuals.push_back(lie_check(v, i, m));
    if (!residuals.back().is_zero()) all_zero = false;
  }
  std::string noether = "none";
  WeightedDegree wd = weighted_degree(g);
  if (solution && !wd.zero && wd.homogeneous) {
    NoetherResult nr = noether_pair(g, wd.degree, m);
    noether = noether_name(nr.kind);
  } else if (solution && wd.zero) {
    noether = "classical";
  }
  err << "[conslaw] symmetry-check solution=" << (solution ? "yes" : "no")
      << " residuals_zero=" << (all_zero ? "yes" : "no") << " noether=" << noether << "\n";
  RenderFormat fmt = pick_format(opts);
  if (fmt == RenderFormat::Json) {
    ordered_json j;
    j["generating_function"] = poly_json(g);
    j["is_solution"] = solution;
    j["linearized_image"] = poly_json(eg);
    j["residuals"] = ordered_json::array();
    for (int i = 0; i <= max_index; ++i) {
      ordered_json e;
      e["index"] = i;
      e["zeta"] = poly_json(residuals[static_cast<std::size_t>(i)].coeff({letter::Zeta}));
      e["zetabar"] =
          poly_json(residuals[static_cast<std::size_t>(i)].coeff({letter::ZetaBar}));
      e["zero"] = residuals[static_cast<std::size_t>(i)].is_zero();
      j["residuals"].push_back(e);
    }
    j["noether"] = noether;
    emit(opts, out, dump(j));
  } else {
    std::ostringstream os;
    os << "g = " << render(g, fmt) << "\n";
    os << "linearized image = " << render(eg, fmt) << "\n";
    for (int i = 0; i <= max_index; ++i)
      os << "residual[" << i << "] = "
         << render(residuals[static_cast<std::size_t>(i)], fmt) << "\n";
    os << "noether: " << noether << "\n";
    emit(opts, out, os.str());
  }
  if (!solution || !all_zero) throw VerificationFailure("symmetry condition fails");
  return 0;
}

int cmd_numcheck(const std::string& potential_text, std::string degrees_text,
                 double u0, double up0, bool ics_set, const std::string& hs_text,
                 const OutputOpts& opts, std::ostream& out, std::ostream& err) {
  Potential pot;
  if (potential_text == "sinh") {
    pot = Potential::Sinh;
  } else if (potential_text == "tzitzeica") {
    pot = Potential::Tzitzeica;
  } else {
    throw std::invalid_argument("potential must be 'sinh' or 'tzitzeica'");
  }
  if (!ics_set) {
    u0 = (pot == Potential::Sinh) ? 1.0 : 0.4;
    up0 = (pot == Potential::Sinh) ? 0.3 : 0.1;
  }
  if (degrees_text.empty()) degrees_text = (pot == Potential::Sinh) ? "1,3,5" : "5";
  std::vector<int> degrees = parse_int_list(degrees_text);
  std::vector<double> hs = parse_double_list(hs_text);
  PotentialModel m = potential_model(pot);
  std::map<std::string, double> params = potential_params(pot);
  ordered_json j;
  j["potential"] = potential_text;
  j["u0"] = u0;
  j["up0"] = up0;
  j["hs"] = hs;
  j["laws"] = ordered_json::array();
  bool all_ok = true;
  for (int d : degrees) {
    VdSolution sol = solve_vd(d, m);
    if (sol.dim == 0) {
      err << "[conslaw] numcheck: no generator at degree " << d << "\n";
      all_ok = false;
      continue;
    }
    ResidualReport rep = linearized_residual(sol.kernel.front(), pot, params, u0, up0, hs);
    ordered_json e;
    e["degree"] = d;
    e["max_residuals"] = rep.max_residuals;
    e["orders"] = rep.orders;
    e["order_ok"] = rep.order_ok;
    j["laws"].push_back(e);
    if (!rep.order_ok) all_ok = false;
    err << "[conslaw] numcheck degree=" << d << " order_ok=" << (rep.order_ok ? "yes" : "no")
        << "\n";
  }
  EnergyReport er = energy_orders(pot, u0, up0, hs);
  j["energy"] = ordered_json::object();
  j["energy"]["drifts"] = er.drifts;
  j["energy"]["orders"] = er.orders;
  RenderFormat fmt = pick_format(opts);
  if (fmt == RenderFormat::Json) {
    emit(opts, out, dump(j));
  } else {
    std::ostringstream os;
    for (const auto& e : j["laws"])
      os << "degree " << e["degree"] << ": orders " << e["orders"].dump()
         << " ok=" << (e["order_ok"].get<bool>() ? "yes" : "no") << "\n";
    os << "energy drift orders " << j["energy"]["orders"].dump() << "\n";
    emit(opts, out, os.str());
  }
  if (!all_ok) throw VerificationFailure("convergence order outside window");
  return 0;
}

int cmd_verify(int max_degree, bool skip_numeric, const OutputOpts& opts,
               std::ostream& out, std::ostream& err) {
  err << "[conslaw] verify max_degree=" << max_degree
      << (skip_numeric ? " (numeric skipped)" : "") << "\n";
  std::vector<CheckResult> results = acceptance_checks(max_degree, !skip_numeric);
  for (const auto& r : results)
    err << "[conslaw]   " << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  ("
        << r.seconds << " s)\n";
  bool ok = all_passed(results);
  RenderFormat fmt = pick_format(opts);
  if (fmt == RenderFormat::Json) {
    ordered_json j;
    j["max_degree"] = max_degree;
    j["numeric_included"] = !skip_numeric;
    j["checks"] = ordered_json::array();
    for (const auto& r : results) {
      ordered_json e;
      e["name"] = r.name;
      e["pass"] = r.pass;
      e["detail"] = r.detail;
      j["checks"].push_back(e);
    }
    j["all_passed"] = ok;
    emit(opts, out, dump(j));
  } else {
    std::ostringstream os;
    for (const auto& r : results)
      os << (r.pass ? "PASS" : "FAIL") << " — " << r.name
         << (r.pass ? "" : (": " + r.detail)) << "\n";
    os << (ok ? "all checks passed" : "some checks FAILED") << "\n";
    emit(opts, out, os.str());
  }
  if (!ok) throw VerificationFailure("verification suite failed");
  return 0;
}

int cmd_render(const std::string& expr_text, const OutputOpts& opts, std::ostream& out,
               std::ostream&) {
  DiffPoly p = parse_expr(expr_text);
  RenderFormat fmt = pick_format(opts);
  if (fmt == RenderFormat::Json) {
    emit(opts, out, dump(poly_json(p)));
  } else {
    emit(opts, out, render(p, fmt) + "\n");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact conservation-law engine for u_{z zbar} = -f(u)"};
  app.require_subcommand(1);

  int exit_code = 0;

  // solve-vd
  int sv_degree = 0;
  std::string sv_model = "generic";
  unsigned sv_seed = 0;
  OutputOpts sv_opts;
  auto* sv = app.add_subcommand("solve-vd", "Kernel of the linearized operator at weight d");
  sv->add_option("-d,--degree", sv_degree, "Weighted degree")->required();
  sv->add_option("-m,--model", sv_model, "generic | fuu=<expr>*f | fuu=<e1>*fu+<e2>*f");
  sv->add_option("--shuffle-seed", sv_seed, "Permute basis enumeration (testing)");
  add_output_opts(sv, sv_opts);
  sv->callback([&] { exit_code = cmd_solve_vd(sv_degree, sv_model, sv_seed, sv_opts, out, err); });

  // build-law
  int bl_degree = 0;
  std::string bl_model = "generic";
  std::string bl_generator;
  OutputOpts bl_opts;
  auto* bl = app.add_subcommand("build-law", "Normal-form conservation law for a generator");
  bl->add_option("-d,--degree", bl_degree, "Weighted degree")->required();
  bl->add_option("-m,--model", bl_model, "Potential model");
  bl->add_option("-g,--generator", bl_generator, "Generating function (default: solver output)");
  add_output_opts(bl, bl_opts);
  bl->callback([&] {
    exit_code = cmd_build_law(bl_degree, bl_model, bl_generator, bl_opts, out, err);
  });

  // ps-chain
  int pc_count = 0;
  std::string pc_beta = "b";
  OutputOpts pc_opts;
  auto* pc = app.add_subcommand("ps-chain", "Recursive chain of odd-weight generators (f_uu = beta f)");
  pc->add_option("-n,--count", pc_count, "Number of chain entries")->required();
  pc->add_option("--beta", pc_beta, "beta as parameter/rational expression");
  add_output_opts(pc, pc_opts);
  pc->callback([&] { exit_code = cmd_ps_chain(pc_count, pc_beta, pc_opts, out, err); });

  // classify
  int cl_degree = 0;
  OutputOpts cl_opts;
  auto* cl = app.add_subcommand("classify", "Rank-drop conditions on (l1, l2) for f_uu = l1 f_u + l2 f");
  cl->add_option("-d,--degree", cl_degree, "Weighted degree (odd, 3..7)")->required();
  add_output_opts(cl, cl_opts);
  cl->callback([&] { exit_code = cmd_classify(cl_degree, cl_opts, out, err); });

  // symmetry-check
  std::string sc_generator;
  std::string sc_model = "generic";
  int sc_max_index = 2;
  OutputOpts sc_opts;
  auto* sc = app.add_subcommand("symmetry-check", "Lie-derivative residuals of the evolutionary vector");
  sc->add_option("-g,--generator", sc_generator, "Generating function")->required();
  sc->add_option("-m,--model", sc_model, "Potential model");
  sc->add_option("--max-index", sc_max_index, "Largest obstruction index checked");
  add_output_opts(sc, sc_opts);
  sc->callback([&] {
    exit_code = cmd_symmetry_check(sc_generator, sc_model, sc_max_index, sc_opts, out, err);
  });

  // numcheck
  std::string nc_potential = "sinh";
  std::string nc_degrees;
  std::string nc_hs = "0.02,0.01,0.005";
  double nc_u0 = 0.0, nc_up0 = 0.0;
  OutputOpts nc_opts;
  auto* nc = app.add_subcommand("numcheck", "Numeric convergence checks along ODE solutions");
  nc->add_option("--potential", nc_potential, "sinh | tzitzeica");
  nc->add_option("--degrees", nc_degrees, "Comma-separated generator degrees");
  nc->add_option("--hs", nc_hs, "Comma-separated step sizes");
  auto* nc_u0_opt = nc->add_option("--u0", nc_u0, "Initial value u(0)");
  nc->add_option("--up0", nc_up0, "Initial slope u'(0)")->needs(nc_u0_opt);
  add_output_opts(nc, nc_opts);
  nc->callback([&] {
    exit_code = cmd_numcheck(nc_potential, nc_degrees, nc_u0, nc_up0,
                             nc_u0_opt->count() > 0, nc_hs, nc_opts, out, err);
  });

  // verify
  int vf_degree = -1;
  bool vf_skip_numeric = false;
  OutputOpts vf_opts;
  auto* vf = app.add_subcommand("verify", "Full invariant suite of all modules");
  vf->add_option("--max-degree", vf_degree, "Degree bound (default: CONSLAW_MAX_DEGREE or 7)");
  vf->add_flag("--skip-numeric", vf_skip_numeric, "Skip the numeric criterion");
  add_output_opts(vf, vf_opts);
  vf->callback([&] {
    int bound = vf_degree;
    if (bound < 0) {
      bound = 7;
      if (const char* env = std::getenv("CONSLAW_MAX_DEGREE")) bound = std::atoi(env);
      if (bound <= 0) bound = 7;
    }
    exit_code = cmd_verify(bound, vf_skip_numeric, vf_opts, out, err);
  });

  // render
  std::string rd_expr;
  OutputOpts rd_opts;
  auto* rd = app.add_subcommand("render", "Parse an expression and re-render it");
  rd->add_option("-e,--expr", rd_expr, "Expression in the polynomial grammar")->required();
  add_output_opts(rd, rd_opts);
  rd->callback([&] { exit_code = cmd_render(rd_expr, rd_opts, out, err); });

  std::vector<const char*> argv;
  argv.push_back("conslaw");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const VerificationFailure& e) {
    err << "[conslaw] verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "[conslaw] usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "[conslaw] error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace conslaw
