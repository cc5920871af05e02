#include "polya/cli.hpp"

#include "polya/contour.hpp"
#include "polya/errors.hpp"
#include "polya/polya_operator.hpp"
#include "polya/zeros.hpp"
#include "polya/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#ifndef POLYA_DEFAULT_ZEROS
#define POLYA_DEFAULT_ZEROS "data/zeros_100.txt"
#endif

namespace polya {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::optional<int> prec;
  std::string zeros;
  std::string json_path;
  std::string csv_path;
  std::vector<std::string> perturb;

  int n = 0;
  std::string c = "1";
  int dim = 0;
  std::string kappa;
  int order = 0;
  std::string scan_min = "0.1";
  std::string scan_max;
  std::string step;
  std::string b;
  std::string d;
  std::string x;
  std::string around;
  std::string s;
  std::string method = "auto";
};

class InputError : public Error {
 public:
  using Error::Error;
};

int resolve_digits(const Options& o) {
  if (o.prec) return *o.prec;
  if (const char* env = std::getenv("POLYA_PREC"); env && *env) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception&) {
      throw InputError(std::string("POLYA_PREC is not an integer: '") + env + "'");
    }
  }
  return 50;
}

PrecisionContext context_for(const Options& o) {
  return PrecisionContext::with_digits(resolve_digits(o));
}

std::string zeros_path(const Options& o) {
  if (!o.zeros.empty()) return o.zeros;
  if (const char* env = std::getenv("POLYA_ZEROS"); env && *env) return env;
  return POLYA_DEFAULT_ZEROS;
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Complex(parse_real(text));
  return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

std::vector<Perturbation> perturbations(const Options& o) {
  std::vector<Perturbation> out;
  PrecisionScope scope(80u);
  for (const std::string& p : o.perturb) out.push_back(parse_perturbation(p));
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

std::string fmt(const Real& x, int digits) { return to_decimal(x, digits); }

std::string fmt(const Complex& z, int digits) {
  return fmt(z.re, digits) + (z.im < 0 ? " - " : " + ") +
         fmt(boost::multiprecision::abs(z.im), digits) + "i";
}

// ---------------------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.n < 0) throw InputError("--n must be a non-negative integer");
  const PrecisionContext ctx = context_for(o);
  PrecisionScope scope(ctx);
  const ZeroCatalog catalog = load_zeros(zeros_path(o));
  const Real c = parse_real(o.c);
  const ContourVerifier verifier(ctx);
  const IdentityReport r = verifier.verify_identity(o.n, catalog, c);
  const Real tol = identity_tolerance(ctx);
  const bool pass = r.abs_error < tol;
  const int d = ctx.digits;
  out << "identity n = " << r.n << " (b = " << fmt(Real(Real(1) / 4 - 2 * r.n), 6)
      << ", c = " << o.c << ", " << d << " digits, " << catalog.size() << " zeros)\n"
      << "  lhs          " << fmt(r.lhs, d) << "\n"
      << "  rhs          " << fmt(r.rhs, d) << "\n"
      << "  abs_error    " << fmt(r.abs_error, 6) << "  (tolerance " << fmt(tol, 3)
      << ", error budget " << fmt(r.error_budget, 3) << ")\n"
      << "  truncation   T = " << fmt(r.truncation.T_vertical, 8)
      << ", Y = " << fmt(r.truncation.Y_horizontal, 8) << "\n"
      << "  printed form n + 1/2 + (Sigma - 3/2 + i): delta = "
      << fmt(r.paper_variant_delta, 12) << (r.paper_variant_match ? "  MATCH" : "  MISMATCH")
      << "\n"
      << "  " << (pass ? "PASS" : "FAIL") << " in " << static_cast<long>(r.elapsed_ms) << " ms\n";
  if (!o.json_path.empty()) write_file(o.json_path, to_json(r));
  return pass ? kExitOk : kExitVerificationFailed;
}

int cmd_sigma(const Options& o, std::ostream& out) {
  const PrecisionContext ctx = context_for(o);
  const auto perturbs = perturbations(o);
  PrecisionScope scope(ctx);
  const ZeroCatalog catalog = load_zeros(zeros_path(o));
  const CriterionReport r = criterion_compare(catalog, perturbs, pi_value(), ctx);
  const int d = ctx.digits;
  out << "zeros        " << catalog.size() << " (" << catalog.source_path() << ")\n"
      << "perturbed    " << perturbs.size() << "\n"
      << "Sigma_pi     " << fmt(r.sigma_pi, d) << "\n"
      << "Sigma_pi,RH  " << fmt(r.sigma_rh, d) << "\n"
      << "difference   " << fmt(r.difference, d) << "\n"
      << "tail_bound   " << fmt(r.tail_bound, 6) << "\n"
      << "resolution   " << fmt(r.resolution, 6) << "\n"
      << "verdict      " << to_string(r.verdict) << "\n";
  if (!o.json_path.empty()) {
    json j;
    j["precision_digits"] = d;
    j["zeros"] = catalog.size();
    j["sigma_pi"] = fmt(r.sigma_pi, d);
    j["sigma_rh"] = fmt(r.sigma_rh, d);
    j["difference"] = fmt(r.difference, d);
    j["tail_bound"] = fmt(r.tail_bound, 6);
    j["resolution"] = fmt(r.resolution, 6);
    j["verdict"] = std::string(to_string(r.verdict));
    write_file(o.json_path, j.dump(2));
  }
  return kExitOk;
}

int cmd_operator(const Options& o, std::ostream& out) {
  if (o.dim < 1) throw InputError("--dim must be a positive integer");
  const PrecisionContext ctx = context_for(o);
  const auto perturbs = perturbations(o);
  PrecisionScope scope(ctx);
  const ZeroCatalog catalog = load_zeros(zeros_path(o));
  const OperatorBuilder builder(ctx);
  const DiagonalOperator op = builder.build(o.dim, catalog, perturbs);
  const std::string csv = to_csv(op, ctx.digits);
  if (o.csv_path.empty()) {
    out << csv;
  } else {
    write_file(o.csv_path, csv);
  }
  const Real dev = spectrum_deviation(op);
  const Real tol = identity_tolerance(ctx);
  out << "# omega " << fmt(op.omega, ctx.digits) << "\n"
      << "# spectrum_deviation " << fmt(dev, 6) << " (tolerance " << fmt(tol, 3) << ")\n";
  if (op.dim > 1) {
    out << "# spectrum_deviation over n >= 1 " << fmt(spectrum_deviation(op, 1), 6) << "\n";
  }
  return dev < tol ? kExitOk : kExitVerificationFailed;
}

int cmd_taylor(const Options& o, std::ostream& out) {
  if (o.order < 1) throw InputError("--order must be a positive integer");
  const PrecisionContext ctx = context_for(o);
  PrecisionScope scope(ctx);
  const Complex kappa = parse_complex(o.kappa);
  const OperatorBuilder builder(ctx);
  const TaylorSeries ts = builder.taylor(kappa, o.order);
  const int d = ctx.digits;
  out << "kappa           " << fmt(ts.kappa, 12) << "\n"
      << "cauchy radius   " << fmt(ts.cauchy_radius, 12) << " (" << ts.points << " points)\n"
      << "radius_estimate " << fmt(ts.radius_estimate, 12) << "\n";
  for (std::size_t m = 0; m < ts.coeffs.size(); ++m) {
    out << "C_" << m << " = " << fmt(ts.coeffs[m], d) << "\n";
  }
  if (!o.json_path.empty()) {
    json j;
    j["kappa_re"] = fmt(ts.kappa.re, d);
    j["kappa_im"] = fmt(ts.kappa.im, d);
    j["radius_estimate"] = fmt(ts.radius_estimate, d);
    j["coeffs"] = json::array();
    for (const Complex& c : ts.coeffs) j["coeffs"].push_back({fmt(c.re, d), fmt(c.im, d)});
    write_file(o.json_path, j.dump(2));
  }
  return kExitOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const PrecisionContext ctx = context_for(o);
  PrecisionScope scope(ctx);
  const ZeroCatalog catalog = load_zeros(zeros_path(o));
  const OperatorBuilder builder(ctx);
  const FixedPointScan scan = builder.scan(parse_real(o.scan_min), parse_real(o.scan_max),
                                           parse_real(o.step), catalog);
  std::string csv = "delta,residual\n";
  for (const ScanPoint& p : scan.grid) csv += fmt(p.delta, 8) + "," + fmt(p.residual, 12) + "\n";
  if (!o.csv_path.empty()) write_file(o.csv_path, csv);
  out << "omega " << fmt(scan.omega, 20) << "\n" << "breaks";
  for (const Real& b : scan.breaks) out << " " << fmt(b, 6);
  out << "\nminima (" << scan.minima.size() << ")\n";
  for (const ScanPoint& p : scan.minima) {
    out << "  delta = " << fmt(p.delta, 8) << "  residual = " << fmt(p.residual, 6) << "\n";
  }
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const PrecisionContext ctx = context_for(o);
  PrecisionScope scope(ctx);
  ContourSpec kernel;
  kernel.a = pi_value();
  kernel.b = parse_real(o.b);
  kernel.c = parse_real(o.c);
  kernel.validate();
  ZeroCatalog catalog;
  if (!o.zeros.empty() || std::getenv("POLYA_ZEROS")) catalog = load_zeros(zeros_path(o));

  Rectangle box;
  if (o.around.empty()) {
    if (o.d.empty() || o.x.empty()) throw InputError("--d and --x are required without --around");
    ContourSpec spec = kernel;
    spec.d = parse_real(o.d);
    spec.X = parse_real(o.x);
    spec.validate();
    box = rectangle_of(spec);
  } else if (o.around == "pole") {
    box = Rectangle::around(Complex(1), Real("0.3"));
  } else if (o.around.rfind("trivial:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(o.around.substr(8));
    } catch (const std::exception&) {
      throw InputError("--around trivial:<k> needs an integer k");
    }
    if (k < 1) throw InputError("trivial zero index must be at least 1");
    box = Rectangle::around(Complex(-2 * k), Real("0.3"));
  } else {
    throw InputError("--around must be 'pole' or 'trivial:<k>'");
  }
  const ContourVerifier verifier(ctx);
  const Complex value = verifier.rectangle_oracle(box, kernel, &catalog);
  const Complex residues = verifier.enclosed_residues(box, kernel, catalog);
  const Real diff = abs(value - residues);
  const Real tol = identity_tolerance(ctx);
  const int d = ctx.digits;
  out << "box        [" << fmt(box.x0, 6) << ", " << fmt(box.x1, 6) << "] x [" << fmt(box.y0, 6)
      << ", " << fmt(box.y1, 6) << "]\n"
      << "contour    " << fmt(value, d) << "\n"
      << "residues   " << fmt(residues, d) << "\n"
      << "difference " << fmt(diff, 6) << " (tolerance " << fmt(tol, 3) << ")\n";
  if (!o.json_path.empty()) {
    json j;
    j["contour_re"] = fmt(value.re, d);
    j["contour_im"] = fmt(value.im, d);
    j["residues_re"] = fmt(residues.re, d);
    j["residues_im"] = fmt(residues.im, d);
    j["difference"] = fmt(diff, 6);
    write_file(o.json_path, j.dump(2));
  }
  return diff < tol ? kExitOk : kExitVerificationFailed;
}

int cmd_zeta(const Options& o, std::ostream& out) {
  const PrecisionContext ctx = context_for(o);
  PrecisionScope scope(ctx);
  const Complex s = parse_complex(o.s);
  const EvalMethod method = parse_method(o.method);
  const ZetaEngine engine(ctx);
  const int d = ctx.digits;
  const ZetaValues v = engine.euler_maclaurin(s);
  const Complex ld = engine.log_deriv(s, method);
  out << "s              " << fmt(s, d) << "\n"
      << "zeta(s)        " << fmt(v.zeta, d) << "\n"
      << "zeta'(s)       " << fmt(v.zeta_prime, d) << "\n"
      << "zeta'/zeta(s)  " << fmt(ld, d) << "  [" << to_string(method) << "]\n";
  if (!o.json_path.empty()) {
    json j;
    j["s_re"] = fmt(s.re, d);
    j["s_im"] = fmt(s.im, d);
    j["zeta_re"] = fmt(v.zeta.re, d);
    j["zeta_im"] = fmt(v.zeta.im, d);
    j["zeta_prime_re"] = fmt(v.zeta_prime.re, d);
    j["zeta_prime_im"] = fmt(v.zeta_prime.im, d);
    j["log_deriv_re"] = fmt(ld.re, d);
    j["log_deriv_im"] = fmt(ld.im, d);
    j["method"] = std::string(to_string(method));
    write_file(o.json_path, j.dump(2));
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contour identities for zeta'/zeta, zero-sum criteria and the truncated operator",
               "polya"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--prec", o.prec, "working precision in decimal digits (default 50, or POLYA_PREC)");
  };
  auto zeros_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--zeros", o.zeros, "zero catalog file");
    if (required) opt->required();
  };

  auto* verify = app.add_subcommand("verify", "check the contour identity for the preset b = -2n + 1/4");
  verify->add_option("--n", o.n, "mode index n >= 0")->required();
  verify->add_option("--c", o.c, "bottom line at Im = -c");
  verify->add_option("--json", o.json_path, "write the identity report as JSON");
  zeros_opt(verify, false);
  common(verify);

  auto* sigma = app.add_subcommand("sigma", "compare Sigma_pi with Sigma_pi,RH");
  zeros_opt(sigma, true);
  sigma->add_option("--perturb", o.perturb, "hypothetical pair t:chi (repeatable)");
  sigma->add_option("--json", o.json_path, "write the comparison as JSON");
  common(sigma);

  auto* op = app.add_subcommand("operator", "build the truncated diagonal operator");
  op->add_option("--dim", o.dim, "number of oscillator modes")->required();
  zeros_opt(op, true);
  op->add_option("--perturb", o.perturb, "fold a hypothetical pair t:chi into omega (repeatable)");
  op->add_option("--csv", o.csv_path, "write the diagonal as CSV instead of printing it");
  common(op);

  auto* taylor = app.add_subcommand("taylor", "Taylor coefficients of zeta'/zeta(kappa - 2 delta)");
  taylor->add_option("--kappa", o.kappa, "expansion point RE[,IM]")->required();
  taylor->add_option("--order", o.order, "highest coefficient index M")->required();
  taylor->add_option("--json", o.json_path, "write the coefficients as JSON");
  common(taylor);

  auto* scan = app.add_subcommand("scan", "residual of the fixed-point equation on a delta grid");
  scan->add_option("--max", o.scan_max, "last grid abscissa")->required();
  scan->add_option("--step", o.step, "grid step (at most 0.05)")->required();
  scan->add_option("--min", o.scan_min, "first grid abscissa (default 0.1)");
  scan->add_option("--csv", o.csv_path, "write delta,residual rows");
  zeros_opt(scan, true);
  common(scan);

  auto* oracle = app.add_subcommand("oracle", "closed-rectangle contour integral against enclosed residues");
  oracle->add_option("--b", o.b, "kernel abscissa b (and left edge)")->required();
  oracle->add_option("--d", o.d, "right edge");
  oracle->add_option("--x", o.x, "top edge height X");
  oracle->add_option("--c", o.c, "bottom line at Im = -c");
  oracle->add_option("--around", o.around, "isolate 'pole' or 'trivial:<k>' in a small box");
  oracle->add_option("--json", o.json_path, "write the result as JSON");
  zeros_opt(oracle, false);
  common(oracle);

  auto* zeta = app.add_subcommand("zeta", "evaluate zeta, zeta' and zeta'/zeta at one point");
  zeta->add_option("--s", o.s, "argument RE[,IM]")->required();
  zeta->add_option("--method", o.method, "em | dirichlet | reflect | auto")
      ->check(CLI::IsMember({"em", "dirichlet", "reflect", "auto"}));
  zeta->add_option("--json", o.json_path, "write the values as JSON");
  common(zeta);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*verify) return cmd_verify(o, out);
    if (*sigma) return cmd_sigma(o, out);
    if (*op) return cmd_operator(o, out);
    if (*taylor) return cmd_taylor(o, out);
    if (*scan) return cmd_scan(o, out);
    if (*oracle) return cmd_oracle(o, out);
    if (*zeta) return cmd_zeta(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PrecisionInfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "failed: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitInputError;
}

}  // namespace polya
