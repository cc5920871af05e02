#include "polya/polya_operator.hpp"

#include "polya/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polya {

namespace {

constexpr double kStripHeight = 14.0;  // no zeta zeros with |Im| below this
constexpr double kCauchyShrink = 0.8;
constexpr double kGridClearance = 1e-4;

Real quarter(int num) { return Real(num) / 8; }

}  // namespace

// ---------------------------------------------------------------------------
// Taylor series

Complex TaylorSeries::partial_sum(const Real& delta, int order) const {
  if (order < 0 || order >= static_cast<int>(coeffs.size())) {
    throw DomainError("partial sum order outside the computed coefficients");
  }
  Complex sum;
  for (int m = order; m >= 0; --m) sum = sum * delta + coeffs[m];
  return sum;
}

std::vector<Real> TaylorSeries::term_magnitudes(const Real& delta) const {
  std::vector<Real> out;
  out.reserve(coeffs.size());
  Real power(1);
  for (const Complex& c : coeffs) {
    out.push_back(abs(c) * power);
    power *= boost::multiprecision::abs(delta);
  }
  return out;
}

Real singularity_distance(const Complex& s) {
  using boost::multiprecision::abs;
  Real best = polya::abs(s - Real(1));
  // trivial zeros: nearest even negative integer(s)
  if (s.re < Real(-1)) {
    const Real k = boost::multiprecision::round(-s.re / 2);
    for (int dk = -1; dk <= 1; ++dk) {
      const Real kk = k + dk;
      if (kk >= 1) best = std::min(best, polya::abs(s + 2 * kk));
    }
  } else {
    best = std::min(best, polya::abs(s + Real(2)));
  }
  const Real dx = std::max({Real(0), Real(-s.re), Real(s.re - 1)});
  const Real dy = std::max(Real(0), Real(Real(kStripHeight) - abs(s.im)));
  best = std::min(best, Real(boost::multiprecision::hypot(dx, dy)));
  return best;
}

// ---------------------------------------------------------------------------
// Operator

Real spectrum_deviation(const DiagonalOperator& op) { return spectrum_deviation(op, 0); }

Real spectrum_deviation(const DiagonalOperator& op, int first) {
  if (op.dim < 1 || static_cast<int>(op.entries.size()) != op.dim) {
    throw DomainError("operator must have at least one diagonal entry");
  }
  Real worst(0);
  for (int n = std::max(first, 0); n < op.dim; ++n) {
    Complex d = op.entries[n];
    d.re -= Real(n) + Real(1) / 2;
    worst = std::max(worst, abs(d));
  }
  return worst;
}

std::string to_csv(const DiagonalOperator& op, int digits) {
  std::ostringstream os;
  os << "n,h_re,h_im,target,abs_dev\n";
  for (int n = 0; n < op.dim; ++n) {
    const Complex& h = op.entries[n];
    const Real target = Real(n) + Real(1) / 2;
    Complex d = h;
    d.re -= target;
    os << n << ',' << to_decimal(h.re, digits) << ',' << to_decimal(h.im, digits) << ','
       << to_decimal(target, digits) << ',' << to_decimal(abs(d), 6) << '\n';
  }
  return os.str();
}

DiagonalOperator assemble_operator(const std::vector<Complex>& combinations, const Complex& omega,
                                   const Real& sigma_used) {
  if (combinations.empty()) throw DomainError("operator dimension must be at least 1");
  DiagonalOperator op;
  op.dim = static_cast<int>(combinations.size());
  op.omega = omega;
  op.sigma_used = sigma_used;
  op.entries.reserve(combinations.size());
  for (const Complex& c : combinations) op.entries.push_back(c - omega);
  return op;
}

std::vector<Real> singular_deltas(const Real& lo, const Real& hi) {
  // 5/4 - 2 delta = 1 -> 1/8; = 1/2 -> 3/8; = -2k -> 5/8 + k
  std::vector<Real> out;
  for (const Real& d : {quarter(1), quarter(3)}) {
    if (d > lo && d < hi) out.push_back(d);
  }
  for (int k = 1;; ++k) {
    const Real d = quarter(5) + k;
    if (!(d < hi)) break;
    if (d > lo) out.push_back(d);
  }
  return out;
}

OperatorBuilder::OperatorBuilder(const PrecisionContext& ctx) : verifier_(ctx) {}

Complex OperatorBuilder::F(const Real& delta) const {
  PrecisionScope scope(context());
  return verifier_.edges().vertical(ContourSpec::from_delta(delta, context())).value;
}

Complex OperatorBuilder::G(const Real& delta) const {
  PrecisionScope scope(context());
  const ContourSpec spec = ContourSpec::from_delta(delta, context());
  // horizontal edge = i e^{pi} int zeta'/zeta e^{i pi y} dy = e^{pi} G
  return verifier_.edges().horizontal(spec).value / boost::multiprecision::exp(spec.a * spec.c);
}

Complex OperatorBuilder::combination(const Real& delta) const {
  PrecisionScope scope(context());
  const ContourSpec spec = ContourSpec::from_delta(delta, context());
  const Complex v = verifier_.edges().vertical(spec).value;
  const Complex h = verifier_.edges().horizontal(spec).value;
  return normalization_factor() * (v + h);
}

TaylorSeries OperatorBuilder::taylor(const Complex& kappa, int order) const {
  const PrecisionContext& ctx = context();
  PrecisionScope scope(ctx);
  if (order < 1) throw DomainError("Taylor order must be positive");
  const Real dist = singularity_distance(kappa);
  if (dist < Real(ZetaEngine::kExclusionRadius)) {
    throw PoleError("kappa sits on a singularity of zeta'/zeta; the Taylor radius is zero");
  }
  TaylorSeries ts;
  ts.kappa = rounded(kappa);
  ts.cauchy_radius = dist * Real(kCauchyShrink);
  // Aliasing decays like 0.8^(P - m); keep it below the tolerance for every m <= order.
  const double log_tol = -ctx.tol_digits * std::log(10.0);
  ts.points = std::max(4 * order + 64,
                       static_cast<int>(std::ceil(log_tol / std::log(kCauchyShrink))) + order);

  const int P = ts.points;
  const Real two_pi = 2 * pi_value();
  std::vector<Complex> samples(P);
  std::vector<Complex> roots(P);
  for (int j = 0; j < P; ++j) {
    roots[j] = expi(two_pi * j / P);
    samples[j] = verifier_.engine().log_deriv(kappa + roots[j] * ts.cauchy_radius);
  }
  ts.coeffs.resize(order + 1);
  Real scale(1);  // r^{-m} (-2)^m
  const Real minus_two_over_r = Real(-2) / ts.cauchy_radius;
  for (int m = 0; m <= order; ++m) {
    Complex acc;
    for (int j = 0; j < P; ++j) acc += samples[j] * conj(roots[(static_cast<long>(j) * m) % P]);
    ts.coeffs[m] = acc * (scale / P);
    scale *= minus_two_over_r;
  }

  // Ratio test over the last quarter of the coefficients.
  std::vector<Real> ratios;
  for (int m = std::max(1, 3 * order / 4); m < order; ++m) {
    const Real next = abs(ts.coeffs[m + 1]);
    if (next > 0) ratios.push_back(abs(ts.coeffs[m]) / next);
  }
  if (ratios.empty()) {
    ts.radius_estimate = dist / 2;
  } else {
    std::sort(ratios.begin(), ratios.end());
    ts.radius_estimate = ratios[ratios.size() / 2];
  }
  return ts;
}

Complex OperatorBuilder::omega(const ZeroCatalog& catalog,
                               const std::vector<Perturbation>& perturbations) const {
  return verifier_.omega_offset(catalog, perturbations);
}

DiagonalOperator OperatorBuilder::build(int dim, const ZeroCatalog& catalog,
                                        const std::vector<Perturbation>& perturbations) const {
  if (dim < 1) throw DomainError("operator dimension must be at least 1");
  const PrecisionContext& ctx = context();
  PrecisionScope scope(ctx);
  std::vector<Complex> values;
  values.reserve(dim);
  for (int n = 0; n < dim; ++n) values.push_back(combination(Real(n) + Real(1) / 2));
  return assemble_operator(values, omega(catalog, perturbations),
                           sigma_pi(catalog, perturbations, pi_value(), ctx));
}

FixedPointScan OperatorBuilder::scan(const Real& lo, const Real& hi, const Real& step,
                                     const ZeroCatalog& catalog) const {
  const PrecisionContext& ctx = context();
  PrecisionScope scope(ctx);
  if (!(step > 0) || step > Real("0.05")) throw DomainError("scan step must lie in (0, 0.05]");
  if (!(hi > lo)) throw DomainError("scan range is empty");
  FixedPointScan out;
  out.omega = omega(catalog);
  out.breaks = singular_deltas(lo, hi);
  const long count =
      static_cast<long>(std::floor(((hi - lo) / step).convert_to<double>() + 1e-9)) + 1;
  const Real clearance(kGridClearance);
  for (long k = 0; k < count; ++k) {
    const Real delta = rounded(lo) + rounded(step) * k;
    for (const Real& s : out.breaks) {
      if (boost::multiprecision::abs(delta - s) < clearance) {
        throw DomainError("scan grid hits the singular abscissa delta = " + to_decimal(s, 6));
      }
    }
    Complex r = combination(delta) - out.omega;
    r.re -= delta;
    out.grid.push_back({delta, abs(r)});
  }
  auto segment = [&](const Real& d) {
    return std::count_if(out.breaks.begin(), out.breaks.end(), [&](const Real& s) { return s < d; });
  };
  for (std::size_t i = 1; i + 1 < out.grid.size(); ++i) {
    const auto seg = segment(out.grid[i].delta);
    if (segment(out.grid[i - 1].delta) != seg || segment(out.grid[i + 1].delta) != seg) continue;
    if (out.grid[i].residual < out.grid[i - 1].residual &&
        out.grid[i].residual < out.grid[i + 1].residual) {
      out.minima.push_back(out.grid[i]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Complex F_eval(const Real& delta, const PrecisionContext& ctx) { return OperatorBuilder(ctx).F(delta); }

Complex G_eval(const Real& delta, const PrecisionContext& ctx) { return OperatorBuilder(ctx).G(delta); }

TaylorSeries taylor_coeffs(const Complex& kappa, int order, const PrecisionContext& ctx) {
  return OperatorBuilder(ctx).taylor(kappa, order);
}

DiagonalOperator build_operator(int dim, const ZeroCatalog& catalog, const PrecisionContext& ctx) {
  return OperatorBuilder(ctx).build(dim, catalog);
}

FixedPointScan fixed_point_scan(const Real& delta_min, const Real& delta_max, const Real& step,
                                const ZeroCatalog& catalog, const PrecisionContext& ctx) {
  return OperatorBuilder(ctx).scan(delta_min, delta_max, step, catalog);
}

}  // namespace polya
