// Prints one PASS/FAIL line per acceptance criterion.
//
// Usage: polya_acceptance --zeros PATH [--expect-fail 5,7,10] [--only 1,2,...]
// Without --expect-fail the exit code is the number of failing criteria. With it,
// the exit code is 0 only when the failing set equals the listed set, so an
// unexpected failure or an unexpected pass both show up.

#include "polya/contour.hpp"
#include "polya/errors.hpp"
#include "polya/polya_operator.hpp"
#include "polya/zeros.hpp"
#include "polya/zeta.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace polya;

namespace {

using boost::multiprecision::exp;
using boost::multiprecision::log;

std::string sci(const Real& x) { return to_decimal(x, 3); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Acceptance {
 public:
  explicit Acceptance(ZeroCatalog catalog) : catalog_(std::move(catalog)) {}

  Outcome identity() {
    std::ostringstream os;
    bool ok = true;
    Real worst(0);
    double slowest = 0;
    for (int n = 0; n <= 4; ++n) {
      const IdentityReport& r = report(n);
      worst = std::max<Real>(worst, r.abs_error);
      slowest = std::max(slowest, r.elapsed_ms);
      ok = ok && r.abs_error < Real("1e-25") && r.elapsed_ms < 5 * 60 * 1000.0;
    }
    os << "max abs_error over n=0..4 " << sci(worst) << " at 50 digits, slowest run "
       << static_cast<long>(slowest) << " ms";
    return {ok, os.str()};
  }

  Outcome oracles() {
    PrecisionScope scope(ctx_);
    const ContourVerifier& v = verifier();
    const Real pi = pi_value();
    const Complex two_pi_i(0, 2 * pi);
    const Real tol("1e-25");
    const ContourSpec k0 = ContourSpec::preset(0, ctx_);
    const ContourSpec k3 = ContourSpec::preset(3, ctx_);
    const Real e_pole = abs(v.rectangle_oracle(Rectangle::around(Complex(1), Real("0.3")), k0, &catalog_) +
                            two_pi_i * g_kernel(Complex(1), k0));
    const Real e_triv = abs(v.rectangle_oracle(Rectangle::around(Complex(-2), Real("0.3")), k3, &catalog_) -
                            two_pi_i * g_kernel(Complex(-2), k3));
    const Rectangle empty{Real("-1.5"), Real("0.5"), Real("0.5"), Real("3")};
    const Real e_free = abs(v.rectangle_oracle(empty, k0, &catalog_));
    std::ostringstream os;
    os << "pole box " << sci(e_pole) << ", box at -2 (n=3) " << sci(e_triv) << ", empty box " << sci(e_free);
    return {e_pole < tol && e_triv < tol && e_free < tol, os.str()};
  }

  Outcome trivial_sum() {
    PrecisionScope scope(ctx_);
    const Real pi = pi_value();
    const Real root2 = boost::multiprecision::sqrt(Real(2));
    Real worst(0);
    for (int n = 1; n <= 6; ++n) {
      const ContourSpec spec = ContourSpec::preset(n, ctx_);
      Complex sum;
      for (int k = 1; k < n; ++k) sum += residue_term(Singularity::trivial(k), spec);
      worst = std::max<Real>(worst, abs(sum - Complex(-1, 1) * (pi * root2 * (n - 1))));
    }
    std::ostringstream os;
    os << "max deviation from pi sqrt2 (n-1)(-1+i) over n=1..6: " << sci(worst);
    return {worst < ctx_.target_tol(), os.str()};
  }

  Outcome adjudication() {
    PrecisionScope scope(ctx_);
    std::vector<IdentityReport> reports;
    for (int n = 0; n <= 4; ++n) reports.push_back(report(n));
    const Adjudication a = verifier().adjudicate(catalog_, reports);
    std::ostringstream os;
    for (const auto& c : a.checks) {
      os << c.name << " printed " << c.printed_text << " " << (c.match ? "matches" : "does not match")
         << " (derived " << to_decimal(c.derived.re, 8) << (c.derived.im < 0 ? "" : "+")
         << to_decimal(c.derived.im, 8) << "i); ";
    }
    int winner = -1;
    for (int m = 0; m < 8; ++m) {
      if (a.sets[m].self_consistent && a.sets[m].matches) winner = m;
    }
    os << a.consistent_matching_sets << " self-consistent set(s) reach 1e-25";
    if (winner >= 0) {
      const VariantSet& s = a.sets[winner];
      os << " (" << (s.printed_nontrivial ? "printed" : "derived") << " coefficient, "
         << (s.printed_pole ? "printed" : "derived") << " pole, " << (s.printed_offset ? "printed" : "derived")
         << " offset)";
    }
    return {a.consistent_matching_sets == 1, os.str()};
  }

  Outcome omega_constancy() {
    PrecisionScope scope(ctx_);
    const Complex w0 = verifier().omega_at(0, catalog_);
    const Complex w4 = verifier().omega_at(4, catalog_);
    const Real d = abs(w0 - w4);
    std::ostringstream os;
    os << "omega(0) = " << to_decimal(w0.re, 6) << ", omega(4) = " << to_decimal(w4.re, 6)
       << " (real parts), |difference| " << sci(d);
    return {d < Real("1e-25"), os.str()};
  }

  Outcome sums() {
    PrecisionScope scope(ctx_);
    const Real pi = pi_value();
    const BoundedSum rh = sigma_rh(catalog_, pi, ctx_);
    const Real lead = exp(-pi * catalog_.entries().front().t);
    const CriterionReport cr =
        criterion_compare(catalog_, {{catalog_.entries().front().t, Real("0.25")}}, pi, ctx_);
    std::ostringstream os;
    os << catalog_.size() << " zeros: sigma_rh " << sci(rh.value) << " (tail bound " << sci(rh.tail_bound)
       << "), chi=0.25 at t1: difference " << sci(cr.difference) << ", " << to_string(cr.verdict);
    const bool ok = catalog_.size() >= 10 && rh.value > Real("1e-20") && rh.value < Real("1e-19") &&
                    (rh.value - lead) < lead / 1000 && rh.tail_bound < Real("1e-60") &&
                    boost::multiprecision::abs(cr.difference) > cr.tail_bound &&
                    cr.verdict == Verdict::violation_detected;
    return {ok, os.str()};
  }

  Outcome spectrum() {
    PrecisionScope scope(ctx_);
    std::vector<Complex> combos;
    for (int n = 0; n < 6; ++n) combos.push_back(report(n).lhs);
    const ContourVerifier& v = verifier();
    const Real pi = pi_value();
    const DiagonalOperator op =
        assemble_operator(combos, v.omega_offset(catalog_), sigma_rh(catalog_, pi, ctx_).value);
    const std::vector<Perturbation> pert{{catalog_.entries().front().t, Real("0.25")}};
    const DiagonalOperator shifted =
        assemble_operator(combos, v.omega_offset(catalog_, pert), sigma_pi(catalog_, pert, pi, ctx_));
    const Real sigma_diff = boost::multiprecision::abs(criterion_compare(catalog_, pert, pi, ctx_).difference);
    const Real dev = spectrum_deviation(op);
    const Real dev_p = spectrum_deviation(shifted);
    const Real dev_p1 = spectrum_deviation(shifted, 1);
    std::ostringstream os;
    os << "D=6 deviation " << sci(dev) << " (h_0 = " << to_decimal(op.entries[0].re, 6)
       << ", n>=1 part " << sci(spectrum_deviation(op, 1)) << "); perturbed deviation " << sci(dev_p)
       << " vs sigma difference " << sci(sigma_diff) << " (n>=1 part off by "
       << sci(boost::multiprecision::abs(dev_p1 - sigma_diff)) << ")";
    const bool ok = dev < Real("1e-20") && dev_p > 0 &&
                    boost::multiprecision::abs(dev_p - sigma_diff) < Real("1e-25");
    return {ok, os.str()};
  }

  Outcome taylor() {
    PrecisionScope scope(ctx_);
    const OperatorBuilder ob(ctx_);
    const Complex kappa(Real("1.25"));
    const TaylorSeries ts = ob.taylor(kappa, 40);
    const Real radius_err = boost::multiprecision::abs(ts.radius_estimate - Real("0.125")) / Real("0.125");
    const Real small("0.05");
    const Real conv = abs(ts.partial_sum(small, 40) - ob.verifier().engine().log_deriv(kappa - Real(2) * small));
    const auto mags = ts.term_magnitudes(Real("0.5"));
    bool growing = true;
    for (int m = 30; m < 40; ++m) growing = growing && mags[m + 1] > mags[m];
    const Real gap = abs(ts.partial_sum(Real("0.5"), 40) - ts.partial_sum(Real("0.5"), 39));
    std::ostringstream os;
    os << "radius " << to_decimal(ts.radius_estimate, 6) << " (rel. err " << sci(radius_err) << "), |S_40 - f| at 0.05 "
       << sci(conv) << ", last term at 0.5 " << sci(gap) << (growing ? " and growing" : " not growing");
    return {radius_err < Real("0.2") && conv < Real("1e-15") && growing && gap > 1, os.str()};
  }

  Outcome engine_checks() {
    PrecisionScope scope(ctx_);
    const ZetaEngine& e = verifier().engine();
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> re_dir(1.5, 4.0), re_ref(-3.0, 0.4), im(-50.0, 50.0);
    Real dir(0), ref(0);
    for (int i = 0; i < 100; ++i) {
      const Complex s(Real(re_dir(rng)), Real(im(rng)));
      dir = std::max<Real>(dir, abs(e.log_deriv(s, EvalMethod::dirichlet) - e.log_deriv(s, EvalMethod::euler_maclaurin)));
    }
    for (int i = 0; i < 100; ++i) {
      const Complex s(Real(re_ref(rng)), Real(im(rng)));
      ref = std::max<Real>(ref, abs(e.log_deriv(s, EvalMethod::reflection) - e.log_deriv(s, EvalMethod::euler_maclaurin)));
    }
    const Real pi = pi_value();
    const Real c2 = abs(e.zeta(Complex(2)) - Complex(pi * pi / 6));
    const Real c0 = abs(e.zeta(Complex(0)) - Complex(Real(-1) / 2));
    const Real cp0 = abs(e.zeta_prime(Complex(0)) + Complex(log(2 * pi) / 2));
    const Real full = boost::multiprecision::pow(Real(10), -ctx_.digits);
    std::ostringstream os;
    os << "dirichlet vs EM " << sci(dir) << ", reflection vs EM " << sci(ref) << ", zeta(2) " << sci(c2)
       << ", zeta(0) " << sci(c0) << ", zeta'(0) " << sci(cp0);
    return {dir < Real("1e-40") && ref < Real("1e-40") && c2 < full && c0 < full && cp0 < full, os.str()};
  }

  Outcome scan() {
    // The scan only needs residuals resolved to ~1e-3, so it runs at 20 digits.
    const PrecisionContext ctx = PrecisionContext::with_digits(20);
    PrecisionScope scope(ctx);
    const Real step("0.02");
    const FixedPointScan s = OperatorBuilder(ctx).scan(Real("0.1"), Real("3.1"), step, catalog_);
    const std::vector<Real> targets{Real("0.5"), Real("1.5"), Real("2.5")};
    auto near_target = [&](const Real& d) {
      for (const Real& t : targets) {
        if (boost::multiprecision::abs(d - t) <= step / 2) return true;
      }
      return false;
    };
    bool minima_ok = !s.minima.empty();
    for (const ScanPoint& m : s.minima) minima_ok = minima_ok && near_target(m.delta);
    std::vector<bool> found(targets.size(), false);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      for (const ScanPoint& m : s.minima) {
        if (boost::multiprecision::abs(m.delta - targets[i]) <= step / 2) found[i] = true;
      }
    }
    Real off_min("1e300");
    for (const ScanPoint& p : s.grid) {
      if (!near_target(p.delta)) off_min = std::min(off_min, p.residual);
    }
    std::ostringstream os;
    os << s.grid.size() << " points at 20 digits, minima at";
    for (const ScanPoint& m : s.minima) os << " " << to_decimal(m.delta, 4) << " (" << sci(m.residual) << ")";
    os << "; targets found:";
    for (std::size_t i = 0; i < targets.size(); ++i) os << " " << to_decimal(targets[i], 2) << (found[i] ? "=yes" : "=no");
    for (const ScanPoint& p : s.grid) {
      if (boost::multiprecision::abs(p.delta - targets[0]) <= step / 2) os << "; residual at 0.5 " << sci(p.residual);
    }
    os << "; smallest off-target residual " << sci(off_min);
    const bool all_found = found[0] && found[1] && found[2];
    return {minima_ok && all_found && off_min > Real("1e-3"), os.str()};
  }

 private:
  const ContourVerifier& verifier() {
    if (!verifier_) {
      PrecisionScope scope(ctx_);
      verifier_ = std::make_unique<ContourVerifier>(ctx_);
    }
    return *verifier_;
  }

  const IdentityReport& report(int n) {
    auto it = reports_.find(n);
    if (it == reports_.end()) {
      PrecisionScope scope(ctx_);
      it = reports_.emplace(n, verifier().verify_identity(n, catalog_)).first;
    }
    return it->second;
  }

  PrecisionContext ctx_ = PrecisionContext::with_digits(50);
  ZeroCatalog catalog_;
  std::unique_ptr<ContourVerifier> verifier_;
  std::map<int, IdentityReport> reports_;
};

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string zeros;
  std::string expect;
  std::string only;
  app.add_option("--zeros", zeros, "zero catalog")->required();
  app.add_option("--expect-fail", expect, "comma-separated criteria known to fail");
  app.add_option("--only", only, "comma-separated subset to run");
  CLI11_PARSE(app, argc, argv);

  ZeroCatalog catalog;
  {
    PrecisionScope scope(80u);
    catalog = load_zeros(zeros);
  }
  Acceptance acc(catalog);
  using Check = Outcome (Acceptance::*)();
  const std::vector<std::pair<const char*, Check>> criteria{
      {"identity n=0..4 below 1e-25", &Acceptance::identity},
      {"rectangle oracles", &Acceptance::oracles},
      {"closed-form trivial sum", &Acceptance::trivial_sum},
      {"printed coefficient adjudication", &Acceptance::adjudication},
      {"omega constancy n=0 vs n=4", &Acceptance::omega_constancy},
      {"criterion sums", &Acceptance::sums},
      {"operator spectrum", &Acceptance::spectrum},
      {"Taylor radius and convergence", &Acceptance::taylor},
      {"engine cross-checks", &Acceptance::engine_checks},
      {"fixed-point scan", &Acceptance::scan},
  };
  const std::set<int> selected = parse_list(only);
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = (acc.*criteria[i].second)();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) failed.insert(id);
    std::printf("CRITERION %d %s: %s [%s; %.1f s]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  if (expect.empty()) return static_cast<int>(failed.size());
  std::set<int> expected = parse_list(expect);
  if (!selected.empty()) {
    std::set<int> kept;
    for (int id : expected) {
      if (selected.count(id)) kept.insert(id);
    }
    expected = kept;
  }
  if (failed == expected) {
    std::printf("failing criteria match the documented set\n");
    return 0;
  }
  std::printf("failing criteria differ from the documented set\n");
  return 1;
}
