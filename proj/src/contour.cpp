#include "polya/contour.hpp"

#include "polya/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>

namespace polya {

namespace {

const char* kPrintedNontrivial = "pi sqrt(2) sum l_k e^{-pi t_k} (-1+i)";
const char* kPrintedPole = "sqrt(2) pi (-1-i)";
const char* kPrintedOffset = "Sigma_pi - 3/2 + i";

Real sqrt2() { return boost::multiprecision::sqrt(Real(2)); }

// Boxes around isolated singularities used by the adjudication.
constexpr double kIsolationHalfWidth = 0.3;
constexpr double kEdgeClearance = 1e-3;

}  // namespace

Complex g_kernel(const Complex& z, const ContourSpec& spec) {
  // i e^{ia(z-b)} = i e^{-a Im z} e^{ia(Re z - b)}
  Complex e = expi(spec.a * (z.re - spec.b)) * boost::multiprecision::exp(-spec.a * z.im);
  return e.times_i();
}

Complex normalization_factor() {
  const Real denom = 2 * sqrt2() * pi_value();
  return Complex(Real(-1) / denom, Real(-1) / denom);
}

Singularity Singularity::pole() { return {SingularityKind::pole, Complex(1), -1}; }

Singularity Singularity::trivial(int k) {
  if (k < 1) throw DomainError("trivial zeros are indexed from k = 1");
  return {SingularityKind::trivial_zero, Complex(-2 * k), 1};
}

Singularity Singularity::zero(const ZeroEntry& entry, bool conjugate) {
  return {SingularityKind::nontrivial_zero,
          Complex(entry.sigma, conjugate ? Real(-entry.t) : entry.t), entry.l};
}

bool encloses(const ContourSpec& spec, const Complex& z) {
  if (!(z.re > spec.b) || !(z.im > -spec.c)) return false;
  if (spec.d && !(z.re < *spec.d)) return false;
  if (spec.X && !(z.im < *spec.X)) return false;
  return true;
}

Complex residue_term(const Singularity& s, const ContourSpec& spec) {
  if (!encloses(spec, s.location)) {
    throw ContourError("singularity at " + to_decimal(s.location.re, 8) + " + " +
                       to_decimal(s.location.im, 8) + "i is not enclosed by the contour");
  }
  Complex g = g_kernel(s.location, spec);
  g *= Real(2 * s.residue) * pi_value();
  return g.times_i();
}

ResidueSum rhs_residue_sum(const ContourSpec& spec, const ZeroCatalog& catalog,
                           const std::vector<Perturbation>& perturbations,
                           const PrecisionContext& ctx) {
  const auto zeros = effective_zeros(catalog, perturbations);
  PrecisionScope scope(ctx);
  spec.validate();
  ResidueSum r;
  for (const ZeroEntry& e : zeros) {
    for (bool conj : {false, true}) {
      const Singularity s = Singularity::zero(e, conj);
      if (encloses(spec, s.location)) r.nontrivial += residue_term(s, spec);
    }
  }
  for (int k = 1; Real(-2 * k) > spec.b; ++k) {
    const Singularity s = Singularity::trivial(k);
    if (encloses(spec, s.location)) {
      r.trivial += residue_term(s, spec);
      ++r.trivial_count;
    }
  }
  if (encloses(spec, Complex(1))) r.pole = residue_term(Singularity::pole(), spec);
  r.total = r.nontrivial + r.trivial + r.pole;

  // Zeros above the catalog: |2 pi i l g(rho)| = 2 pi l e^{-a t}.
  const Real last = catalog.empty() ? Real(14) : Real(catalog.entries().back().t);
  if (spec.X && *spec.X <= last) {
    r.tail_bound = 0;
  } else {
    r.tail_bound = 2 * pi_value() * boost::multiprecision::exp(-spec.a * last) /
                   (1 - boost::multiprecision::exp(-spec.a));
  }
  return r;
}

Real IdentityReport::recomputed_error() const { return abs(lhs - rhs); }

Real identity_tolerance(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return boost::multiprecision::pow(Real(10), -(ctx.digits / 2));
}

// ---------------------------------------------------------------------------

ContourVerifier::ContourVerifier(const PrecisionContext& ctx)
    : engine_(ctx), edges_(engine_), integrator_(ctx, PanelScheme::for_context(ctx)) {}

Complex ContourVerifier::lhs_edges(const ContourSpec& spec) const {
  if (spec.d || spec.X) throw DomainError("lhs_edges needs the semi-infinite contour");
  PrecisionScope scope(context());
  return edges_.vertical(spec).value + edges_.horizontal(spec).value;
}

Complex ContourVerifier::rectangle_oracle(const Rectangle& box, const ContourSpec& kernel,
                                          const ZeroCatalog* catalog) const {
  PrecisionScope scope(context());
  if (!(box.x0 < box.x1) || !(box.y0 < box.y1)) throw DomainError("degenerate rectangle");
  const Real clearance(kEdgeClearance);
  auto guard = [&](const Complex& z, const std::string& what) {
    if (box.edge_distance(z) < clearance) {
      throw ContourError(what + " lies within 1e-3 of the rectangle boundary");
    }
  };
  guard(Complex(1), "the pole at 1");
  if (box.y0 <= 0 && box.y1 >= 0) {
    for (int k = 1; Real(-2 * k) >= box.x0 - 1; ++k) guard(Complex(-2 * k), "a trivial zero");
  }
  if (catalog) {
    for (const ZeroEntry& e : catalog->entries()) {
      guard(Complex(e.sigma, e.t), "a catalog zero");
      guard(Complex(e.sigma, -e.t), "a catalog zero");
    }
  }

  auto f = [&](const Complex& z) { return engine_.log_deriv(z) * g_kernel(z, kernel); };
  auto panels = [](const Real& len) {
    return std::max(1, static_cast<int>(std::ceil((2 * len).convert_to<double>())));
  };
  // Each edge gets a quarter of the tolerance, scaled by the kernel growth on that edge.
  const Real tol = context().target_tol() / 4;
  const Real& a = kernel.a;
  auto edge_tol = [&](const Real& y) {
    return Real(tol / std::max<Real>(Real(1), boost::multiprecision::exp(-a * y)));
  };

  const Real wx = box.x1 - box.x0;
  const Real wy = box.y1 - box.y0;
  const Real& lo_y = box.y0;
  const Complex bottom =
      integrator_.integrate([&](const Real& x) { return f(Complex(x, box.y0)); }, box.x0, box.x1,
                            panels(wx), edge_tol(box.y0)).value;
  const Complex right =
      integrator_.integrate([&](const Real& y) { return f(Complex(box.x1, y)); }, box.y0, box.y1,
                            panels(wy), edge_tol(lo_y)).value;
  const Complex top =
      integrator_.integrate([&](const Real& x) { return f(Complex(x, box.y1)); }, box.x0, box.x1,
                            panels(wx), edge_tol(box.y1)).value;
  const Complex left =
      integrator_.integrate([&](const Real& y) { return f(Complex(box.x0, y)); }, box.y0, box.y1,
                            panels(wy), edge_tol(lo_y)).value;
  return bottom + right.times_i() - top - left.times_i();
}

Complex ContourVerifier::rectangle_oracle(const ContourSpec& finite_spec,
                                          const ZeroCatalog* catalog) const {
  return rectangle_oracle(rectangle_of(finite_spec), finite_spec, catalog);
}

Complex ContourVerifier::enclosed_residues(const Rectangle& box, const ContourSpec& kernel,
                                           const ZeroCatalog& catalog) const {
  PrecisionScope scope(context());
  // g keeps the kernel's own b; only the enclosure test uses the box.
  Complex sum;
  for (const ZeroEntry& e : catalog.entries()) {
    for (bool conj : {false, true}) {
      const Singularity s = Singularity::zero(e, conj);
      if (box.contains(s.location)) {
        Complex g = g_kernel(s.location, kernel) * (Real(2 * s.residue) * pi_value());
        sum += g.times_i();
      }
    }
  }
  for (int k = 1; Real(-2 * k) > box.x0; ++k) {
    const Singularity s = Singularity::trivial(k);
    if (box.contains(s.location)) {
      sum += (g_kernel(s.location, kernel) * (2 * pi_value())).times_i();
    }
  }
  if (box.contains(Complex(1))) sum -= (g_kernel(Complex(1), kernel) * (2 * pi_value())).times_i();
  return sum;
}

IdentityReport ContourVerifier::verify_identity(int n, const ZeroCatalog& catalog) const {
  PrecisionScope scope(context());
  return verify_identity(n, catalog, Real(1));
}

IdentityReport ContourVerifier::verify_identity(int n, const ZeroCatalog& catalog,
                                                const Real& c) const {
  if (n < 0) throw DomainError("mode index n must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  const PrecisionContext& ctx = context();
  PrecisionScope scope(ctx);
  const ContourSpec spec = ContourSpec::preset(n, c, ctx);
  const Complex norm = normalization_factor();

  IdentityReport r;
  r.n = n;
  r.precision_digits = ctx.digits;
  r.truncation = edges_.plan(spec);
  const EdgeResult v = edges_.vertical(spec);
  const EdgeResult h = edges_.horizontal(spec);
  const ResidueSum res = rhs_residue_sum(spec, catalog, {}, ctx);
  r.lhs_vertical = v.value;
  r.lhs_horizontal = h.value;
  r.lhs = norm * (v.value + h.value);
  r.rhs = norm * res.total;
  r.abs_error = abs(r.lhs - r.rhs);
  r.error_budget = abs(norm) * (v.quad_error + v.tail_bound + h.quad_error + h.tail_bound +
                                res.tail_bound);

  r.sigma_pi = sigma_pi(catalog, {}, spec.a, ctx);
  const Complex printed(Real(n) + r.sigma_pi - 1, Real(1));  // n + 1/2 + (Sigma - 3/2 + i)
  r.paper_variant_delta = r.rhs - printed;
  r.paper_variant_match = abs(r.paper_variant_delta) < Real(kVariantTolerance);
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Complex ContourVerifier::omega_at(int n, const ZeroCatalog& catalog,
                                  const std::vector<Perturbation>& perturbations) const {
  const PrecisionContext& ctx = context();
  PrecisionScope scope(ctx);
  const ContourSpec spec = ContourSpec::preset(n, ctx);
  const ResidueSum res = rhs_residue_sum(spec, catalog, perturbations, ctx);
  Complex omega = normalization_factor() * res.total;
  omega.re -= Real(n) + Real(1) / 2;
  return omega;
}

Complex ContourVerifier::omega_offset(const ZeroCatalog& catalog,
                                      const std::vector<Perturbation>& perturbations,
                                      int reference, const std::vector<int>& check_modes) const {
  PrecisionScope scope(context());
  const Complex omega = omega_at(reference, catalog, perturbations);
  const Real limit = 10 * context().target_tol();
  for (int m : check_modes) {
    const Complex other = omega_at(m, catalog, perturbations);
    const Real diff = abs(other - omega);
    if (diff > limit) {
      throw InconsistencyError("omega differs between n = " + std::to_string(reference) +
                               " and n = " + std::to_string(m) + " by " + to_decimal(diff, 6));
    }
  }
  return omega;
}

Adjudication ContourVerifier::adjudicate(const ZeroCatalog& catalog,
                                         const std::vector<IdentityReport>& reports) const {
  const PrecisionContext& ctx = context();
  PrecisionScope scope(ctx);
  const Complex norm = normalization_factor();
  const Real pi = pi_value();
  const Real root2 = sqrt2();
  const ContourSpec kernel = ContourSpec::preset(0, ctx);
  const Real half(kIsolationHalfWidth);
  const Real sigma = sigma_rh(catalog, pi, ctx).value;

  Adjudication out;

  // Pole: isolate z = 1.
  const Complex pole_derived = rectangle_oracle(Rectangle::around(Complex(1), half), kernel, &catalog);
  const Complex pole_printed = Complex(-1, -1) * (root2 * pi);

  // Nontrivial coefficient: isolate the first zero and strip pi sqrt(2) l e^{-pi t}.
  Complex coef_derived;
  if (!catalog.empty()) {
    const ZeroEntry& first = catalog.entries().front();
    const Complex rho(first.sigma, first.t);
    const Complex box = rectangle_oracle(Rectangle::around(rho, half), kernel, &catalog);
    coef_derived = box / (pi * root2 * first.l * boost::multiprecision::exp(-pi * first.t));
  } else {
    ZeroEntry probe;
    probe.t = 14;
    coef_derived = residue_term(Singularity::zero(probe), kernel) /
                   (pi * root2 * boost::multiprecision::exp(-pi * probe.t));
  }
  const Complex coef_printed(-1, 1);

  // Offset: the quadrature side at the first positive mode, minus (n + 1/2).
  Complex offset_derived;
  bool have_offset = false;
  for (const IdentityReport& r : reports) {
    if (r.n >= 1) {
      offset_derived = r.lhs;
      offset_derived.re -= Real(r.n) + Real(1) / 2;
      have_offset = true;
      break;
    }
  }
  if (!have_offset) offset_derived = omega_at(1, catalog);
  const Complex offset_printed(sigma - Real(3) / 2, Real(1));

  const Real vtol(kVariantTolerance);
  out.checks[0] = {"nontrivial coefficient", kPrintedNontrivial, coef_printed, coef_derived,
                   abs(coef_printed - coef_derived) < vtol};
  out.checks[1] = {"pole contribution", kPrintedPole, pole_printed, pole_derived,
                   abs(pole_printed - pole_derived) < vtol};
  out.checks[2] = {"normalized offset", kPrintedOffset, offset_printed, offset_derived,
                   abs(offset_printed - offset_derived) < vtol};

  const Real id_tol = identity_tolerance(ctx);
  for (int mask = 0; mask < 8; ++mask) {
    VariantSet& set = out.sets[mask];
    set.printed_nontrivial = mask & 1;
    set.printed_pole = mask & 2;
    set.printed_offset = mask & 4;
    const Complex nt = norm * (set.printed_nontrivial ? coef_printed : coef_derived) * (pi * root2);
    const Complex pole = norm * (set.printed_pole ? pole_printed : pole_derived);
    const Complex offset = set.printed_offset ? offset_printed : offset_derived;
    // With the closed-form trivial sum n - 1, the residue side is n + 1/2 + (nt Sigma + pole - 3/2).
    Complex implied = nt * sigma + pole;
    implied.re -= Real(3) / 2;
    set.self_consistent = abs(implied - offset) < id_tol;
    set.max_error = 0;
    for (const IdentityReport& r : reports) {
      const ContourSpec spec = ContourSpec::preset(r.n, ctx);
      const ResidueSum res = rhs_residue_sum(spec, catalog, {}, ctx);
      const Complex rhs = norm * res.trivial + nt * sigma + pole;
      set.max_error = std::max<Real>(set.max_error, abs(r.lhs - rhs));
      if (r.n >= 1) {
        Complex closed = offset;
        closed.re += Real(r.n) + Real(1) / 2;
        set.max_error = std::max<Real>(set.max_error, abs(r.lhs - closed));
      }
    }
    set.matches = !reports.empty() && set.max_error < id_tol;
    if (set.self_consistent && set.matches) ++out.consistent_matching_sets;
  }
  return out;
}

// ---------------------------------------------------------------------------

Complex lhs_edges(const ContourSpec& spec, const PrecisionContext& ctx) {
  return ContourVerifier(ctx).lhs_edges(spec);
}

Complex rectangle_oracle(const ContourSpec& finite_spec, const PrecisionContext& ctx) {
  return ContourVerifier(ctx).rectangle_oracle(finite_spec);
}

IdentityReport verify_identity(int n, const ZeroCatalog& catalog, const PrecisionContext& ctx) {
  return ContourVerifier(ctx).verify_identity(n, catalog);
}

Complex omega_offset(const ZeroCatalog& catalog, const PrecisionContext& ctx) {
  return ContourVerifier(ctx).omega_offset(catalog);
}

std::string to_json(const IdentityReport& r, bool include_timing) {
  const int digits = r.precision_digits > 0 ? r.precision_digits : 50;
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["precision_digits"] = r.precision_digits;
  j["lhs_re"] = to_decimal(r.lhs.re, digits);
  j["lhs_im"] = to_decimal(r.lhs.im, digits);
  j["rhs_re"] = to_decimal(r.rhs.re, digits);
  j["rhs_im"] = to_decimal(r.rhs.im, digits);
  j["abs_error"] = to_decimal(r.abs_error, 6);
  j["trunc_T"] = to_decimal(r.truncation.T_vertical, 20);
  j["trunc_Y"] = to_decimal(r.truncation.Y_horizontal, 20);
  j["paper_variant_delta_re"] = to_decimal(r.paper_variant_delta.re, digits);
  j["paper_variant_delta_im"] = to_decimal(r.paper_variant_delta.im, digits);
  j["paper_variant_match"] = r.paper_variant_match;
  if (include_timing) j["elapsed_ms"] = std::round(r.elapsed_ms * 1000.0) / 1000.0;
  return j.dump(2);
}

}  // namespace polya
