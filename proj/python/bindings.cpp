#include "polya/cli.hpp"
#include "polya/contour.hpp"
#include "polya/errors.hpp"
#include "polya/polya_operator.hpp"
#include "polya/zeros.hpp"
#include "polya/zeta.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace polya;

namespace {

std::complex<double> to_py(const Complex& z) {
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

Complex parse_complex(const std::string& re, const std::string& im) {
  return {parse_real(re), parse_real(im)};
}

std::vector<Perturbation> parse_perturbations(const std::vector<std::string>& items) {
  PrecisionScope scope(80u);
  std::vector<Perturbation> out;
  for (const auto& p : items) out.push_back(parse_perturbation(p));
  return out;
}

py::dict zeta_values(const std::string& re, const std::string& im, const std::string& method,
                     int digits) {
  const auto ctx = PrecisionContext::with_digits(digits);
  PrecisionScope scope(ctx);
  const ZetaEngine engine(ctx);
  const Complex s = parse_complex(re, im);
  const ZetaValues v = engine.euler_maclaurin(s);
  const Complex ld = engine.log_deriv(s, parse_method(method));
  py::dict d;
  d["zeta"] = to_py(v.zeta);
  d["zeta_prime"] = to_py(v.zeta_prime);
  d["log_deriv"] = to_py(ld);
  d["zeta_text"] = py::make_tuple(to_decimal(v.zeta.re, digits), to_decimal(v.zeta.im, digits));
  d["log_deriv_text"] = py::make_tuple(to_decimal(ld.re, digits), to_decimal(ld.im, digits));
  return d;
}

std::string verify(int n, const std::string& zeros, int digits, const std::string& c) {
  const auto ctx = PrecisionContext::with_digits(digits);
  PrecisionScope scope(ctx);
  const ZeroCatalog catalog = load_zeros(zeros);
  const ContourVerifier verifier(ctx);
  return to_json(verifier.verify_identity(n, catalog, parse_real(c)));
}

py::dict sigma(const std::string& zeros, const std::vector<std::string>& perturb, int digits) {
  const auto ctx = PrecisionContext::with_digits(digits);
  const auto perts = parse_perturbations(perturb);
  PrecisionScope scope(ctx);
  const ZeroCatalog catalog = load_zeros(zeros);
  const CriterionReport r = criterion_compare(catalog, perts, pi_value(), ctx);
  py::dict d;
  d["sigma_pi"] = to_decimal(r.sigma_pi, digits);
  d["sigma_rh"] = to_decimal(r.sigma_rh, digits);
  d["difference"] = to_decimal(r.difference, digits);
  d["tail_bound"] = r.tail_bound.convert_to<double>();
  d["verdict"] = std::string(to_string(r.verdict));
  return d;
}

py::dict taylor(const std::string& re, const std::string& im, int order, int digits) {
  const auto ctx = PrecisionContext::with_digits(digits);
  PrecisionScope scope(ctx);
  const TaylorSeries ts = OperatorBuilder(ctx).taylor(parse_complex(re, im), order);
  std::vector<std::complex<double>> coeffs;
  for (const auto& c : ts.coeffs) coeffs.push_back(to_py(c));
  py::dict d;
  d["coeffs"] = coeffs;
  d["radius_estimate"] = ts.radius_estimate.convert_to<double>();
  d["cauchy_radius"] = ts.cauchy_radius.convert_to<double>();
  return d;
}

py::dict build(int dim, const std::string& zeros, const std::vector<std::string>& perturb,
               int digits) {
  const auto ctx = PrecisionContext::with_digits(digits);
  const auto perts = parse_perturbations(perturb);
  PrecisionScope scope(ctx);
  const ZeroCatalog catalog = load_zeros(zeros);
  const DiagonalOperator op = OperatorBuilder(ctx).build(dim, catalog, perts);
  std::vector<std::complex<double>> entries;
  for (const auto& h : op.entries) entries.push_back(to_py(h));
  py::dict d;
  d["entries"] = entries;
  d["omega"] = to_py(op.omega);
  d["spectrum_deviation"] = spectrum_deviation(op).convert_to<double>();
  d["csv"] = to_csv(op, digits);
  return d;
}

py::tuple run(const std::vector<std::string>& args) {
  std::vector<std::string> full{"polya"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run_cli(full, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_polya, m) {
  m.doc() = "Multiprecision zeta'/zeta contour identities";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "PolyaError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("zeta", &zeta_values, py::arg("re"), py::arg("im") = "0", py::arg("method") = "auto",
        py::arg("digits") = 50, "zeta, zeta' and zeta'/zeta at re + i im (decimal strings)");
  m.def("verify_identity", &verify, py::arg("n"), py::arg("zeros"), py::arg("digits") = 50,
        py::arg("c") = "1", "identity report for the preset n, as a JSON string");
  m.def("sigma", &sigma, py::arg("zeros"), py::arg("perturb") = std::vector<std::string>{},
        py::arg("digits") = 50);
  m.def("taylor", &taylor, py::arg("re"), py::arg("im") = "0", py::arg("order") = 20,
        py::arg("digits") = 50);
  m.def("build_operator", &build, py::arg("dim"), py::arg("zeros"),
        py::arg("perturb") = std::vector<std::string>{}, py::arg("digits") = 50);
  m.def("run_cli", &run, py::arg("args"), "run a command line, returning (code, stdout, stderr)");
}
