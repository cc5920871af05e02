#include "polya/quadrature.hpp"

#include "polya/errors.hpp"

#include <algorithm>
#include <cmath>

namespace polya {

// ---------------------------------------------------------------------------
// Gauss-Legendre rule

GaussLegendreRule::GaussLegendreRule(int order, unsigned digits10) : order_(order) {
  if (order < 2 || order % 2 != 0) throw DomainError("Gauss-Legendre order must be even and >= 2");
  PrecisionScope scope(digits10);
  const Real eps = boost::multiprecision::pow(Real(10), -static_cast<int>(digits10) + 2);
  const int half = order / 2;
  nodes_.reserve(half);
  weights_.reserve(half);
  for (int i = 1; i <= half; ++i) {
    Real x(std::cos(M_PI * (i - 0.25) / (order + 0.5)));
    Real dp;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0(1), p1 = x;
      for (int k = 2; k <= order; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = order * (x * p1 - p0) / (x * x - 1);
      const Real step = p1 / dp;
      x -= step;
      if (boost::multiprecision::abs(step) < eps) {
        // one more derivative at the converged node for the weight
        p0 = 1;
        p1 = x;
        for (int k = 2; k <= order; ++k) {
          Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = std::move(p1);
          p1 = std::move(p2);
        }
        dp = order * (x * p1 - p0) / (x * x - 1);
        break;
      }
    }
    nodes_.push_back(x);
    weights_.push_back(2 / ((1 - x * x) * dp * dp));
  }
}

Complex GaussLegendreRule::apply(const RealIntegrand& f, const Real& lo, const Real& hi) const {
  const Real mid = (lo + hi) / 2;
  const Real half = (hi - lo) / 2;
  Complex sum;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Real dx = half * nodes_[i];
    Complex pair = f(mid - dx);
    pair += f(mid + dx);
    sum += pair * weights_[i];
  }
  return sum * half;
}

// ---------------------------------------------------------------------------
// Adaptive panels

PanelScheme PanelScheme::for_context(const PrecisionContext& ctx) {
  PanelScheme s;
  s.abs_tol = ctx.target_tol();
  return s;
}

AdaptiveIntegrator::AdaptiveIntegrator(const PrecisionContext& ctx, PanelScheme scheme)
    : ctx_(ctx),
      scheme_(std::move(scheme)),
      rule_(scheme_.rule, static_cast<unsigned>(ctx.working_digits())) {
  if (scheme_.max_depth < 1) throw DomainError("max_depth must be positive");
  if (!(scheme_.abs_tol > 0)) scheme_.abs_tol = ctx_.target_tol();
}

namespace {

struct Walk {
  const RealIntegrand& f;
  const GaussLegendreRule& rule;
  int max_depth;
  QuadratureResult acc;
  bool exhausted = false;

  void refine(const Real& lo, const Real& hi, const Complex& whole, const Real& tol, int depth) {
    const Real mid = (lo + hi) / 2;
    const Complex left = rule.apply(f, lo, mid);
    const Complex right = rule.apply(f, mid, hi);
    acc.evaluations += 2 * static_cast<std::size_t>(rule.order());
    const Complex halves = left + right;
    const Real err = abs(whole - halves);
    if (err <= tol || depth >= max_depth) {
      if (err > tol) exhausted = true;
      acc.value += halves;
      acc.error += err;
      ++acc.panels;
      return;
    }
    const Real half_tol = tol / 2;
    refine(lo, mid, left, half_tol, depth + 1);
    refine(mid, hi, right, half_tol, depth + 1);
  }
};

}  // namespace

QuadratureResult AdaptiveIntegrator::integrate(const RealIntegrand& f, const Real& lo,
                                               const Real& hi, int initial_panels) const {
  return integrate(f, lo, hi, initial_panels, scheme_.abs_tol);
}

QuadratureResult AdaptiveIntegrator::integrate(const RealIntegrand& f, const Real& lo,
                                               const Real& hi, int initial_panels,
                                               const Real& abs_tol) const {
  PrecisionScope scope(ctx_);
  if (initial_panels < 1) throw DomainError("need at least one panel");
  Walk walk{f, rule_, scheme_.max_depth, {}, false};
  const Real a = rounded(lo);
  const Real b = rounded(hi);
  const Real width = (b - a) / initial_panels;
  const Real panel_tol = rounded(abs_tol) / initial_panels;
  for (int k = 0; k < initial_panels; ++k) {
    const Real p_lo = a + width * k;
    const Real p_hi = (k + 1 == initial_panels) ? b : Real(a + width * (k + 1));
    const Complex whole = rule_.apply(f, p_lo, p_hi);
    walk.acc.evaluations += static_cast<std::size_t>(rule_.order());
    walk.refine(p_lo, p_hi, whole, panel_tol, 0);
  }
  if (walk.exhausted) {
    throw MaxDepthExceeded("adaptive quadrature reached depth " +
                               std::to_string(scheme_.max_depth) + " without converging",
                           to_decimal(walk.acc.value.re, ctx_.digits),
                           to_decimal(walk.acc.value.im, ctx_.digits),
                           to_decimal(walk.acc.error, 6));
  }
  return walk.acc;
}

QuadratureResult integrate_panel_adaptive(const RealIntegrand& f, const Real& lo, const Real& hi,
                                          const PanelScheme& scheme, const PrecisionContext& ctx) {
  return AdaptiveIntegrator(ctx, scheme).integrate(f, lo, hi, 1);
}

// ---------------------------------------------------------------------------
// Contour edges

namespace {

Real ln10() { return boost::multiprecision::log(Real(10)); }

}  // namespace

EdgeQuadrature::EdgeQuadrature(const ZetaEngine& engine)
    : engine_(engine), integrator_(engine.context(), PanelScheme::for_context(engine.context())) {}

Real EdgeQuadrature::vertical_bound(const Real& b, const Real& T) const {
  PrecisionScope scope(engine_.context());
  using boost::multiprecision::log;
  if (b > Real(5) / 4) return engine_.dirichlet_bound(b);
  if (b < Real(-1) / 4) {
    // ln 2pi + (pi/2) coth(pi T/2) + |psi(1-b-it)| + |zeta'/zeta(1-b-it)|
    const Real reflected = 1 - b;
    const Real coth = 1 / boost::multiprecision::tanh(engine_.pi() * T / 2);
    return log(2 * engine_.pi()) + engine_.pi() / 2 * coth + log(reflected + T) + 3 +
           engine_.dirichlet_bound(reflected);
  }
  // Inside or near the critical strip there is no uniform bound; |zeta'/zeta| grows like
  // log t between zeros and this generous multiple covers the heights used here.
  return 10 + 10 * log(T);
}

TruncationPlan EdgeQuadrature::plan(const ContourSpec& spec, HorizonMode mode) const {
  const PrecisionContext& ctx = engine_.context();
  PrecisionScope scope(ctx);
  TruncationPlan plan;
  const Real tol = ctx.target_tol();

  plan.T_vertical = ctx.digits * ln10() / spec.a + 10;
  Real vtail;
  for (;;) {
    const Real& T = plan.T_vertical;
    vtail = boost::multiprecision::exp(-spec.a * T) *
            (vertical_bound(spec.b, T) / spec.a + 1 / (spec.a * spec.a * T));
    if (vtail < tol / 20) break;
    plan.T_vertical += 5;
  }

  const Real growth = boost::multiprecision::exp(spec.a * spec.c);
  Real htail;
  if (mode == HorizonMode::analytic_tail) {
    plan.Y_horizontal = std::max<Real>(Real(kTailSwitchSigma) - spec.b, Real(1));
    htail = tol / 1000;  // truncation of the term-wise tail sum
  } else {
    // 2^-(Y+b-1) < 10^-digits
    const Real sigma = ceil(ctx.digits * ln10() / boost::multiprecision::log(Real(2))) + 2;
    plan.Y_horizontal = std::max<Real>(sigma - spec.b, Real(1));
    htail = growth * boost::multiprecision::pow(Real(2), -sigma) * (1 + 2 / (sigma - 1));
  }
  plan.tail_bound = vtail + htail;
  return plan;
}

EdgeResult EdgeQuadrature::vertical(const ContourSpec& spec) const {
  return vertical(spec, plan(spec).T_vertical);
}

EdgeResult EdgeQuadrature::vertical(const ContourSpec& spec, const Real& T) const {
  const PrecisionContext& ctx = engine_.context();
  PrecisionScope scope(ctx);
  spec.validate();
  const Real a = rounded(spec.a);
  const Real b = rounded(spec.b);
  const Real c = rounded(spec.c);
  auto f = [&](const Real& t) {
    Complex v = engine_.log_deriv(Complex(b, t));
    v *= boost::multiprecision::exp(-a * t);
    return v;
  };
  const int panels = std::max(1, static_cast<int>(std::ceil((T + c).convert_to<double>())));
  const QuadratureResult q = integrator_.integrate(f, -c, T, panels, ctx.target_tol() / 4);
  EdgeResult r;
  r.value = q.value;
  r.quad_error = q.error;
  r.limit = rounded(T);
  r.evaluations = q.evaluations;
  r.tail_bound = boost::multiprecision::exp(-a * T) *
                 (vertical_bound(b, T) / a + 1 / (a * a * T));
  return r;
}

EdgeResult EdgeQuadrature::horizontal(const ContourSpec& spec, HorizonMode mode) const {
  const TruncationPlan p = plan(spec, mode);
  EdgeResult r = horizontal(spec, p.Y_horizontal, mode == HorizonMode::analytic_tail);
  if (mode == HorizonMode::pure_quadrature) {
    PrecisionScope scope(engine_.context());
    const Real sigma = p.Y_horizontal + spec.b;
    r.tail_bound = boost::multiprecision::exp(spec.a * spec.c) *
                   boost::multiprecision::pow(Real(2), -sigma) * (1 + 2 / (sigma - 1));
  }
  return r;
}

EdgeResult EdgeQuadrature::horizontal(const ContourSpec& spec, const Real& Y, bool add_tail) const {
  const PrecisionContext& ctx = engine_.context();
  PrecisionScope scope(ctx);
  spec.validate();
  const Real a = rounded(spec.a);
  const Real b = rounded(spec.b);
  const Real c = rounded(spec.c);
  const Real growth = boost::multiprecision::exp(a * c);
  auto f = [&](const Real& x) {
    Complex v = engine_.log_deriv(Complex(x + b, -c));
    v *= expi(a * x);
    return v;
  };
  // Panels no wider than 1/2 resolve the oscillation of e^{iax} at a = pi.
  const int panels = std::max(1, static_cast<int>(std::ceil((2 * Y).convert_to<double>())));
  const QuadratureResult q = integrator_.integrate(f, Real(0), Y, panels,
                                                   ctx.target_tol() / (4 * growth));
  EdgeResult r;
  r.value = (q.value * growth).times_i();
  r.quad_error = q.error * growth;
  r.limit = rounded(Y);
  r.evaluations = q.evaluations;
  r.tail_bound = ctx.target_tol() / 1000;
  if (add_tail) r.value += dirichlet_tail(Y, spec);
  return r;
}

Complex EdgeQuadrature::dirichlet_tail(const Real& Y, const ContourSpec& spec) const {
  const PrecisionContext& ctx = engine_.context();
  PrecisionScope scope(ctx);
  const Real a = rounded(spec.a);
  const Real c = rounded(spec.c);
  const Real sigma = rounded(Y) + spec.b;
  if (!(sigma - 1 > Real(ZetaEngine::kDirichletMargin))) {
    throw DomainError("Dirichlet tail needs Y + b - 1 > 1.25");
  }
  const Real growth = boost::multiprecision::exp(a * c);
  const Real log_tol = boost::multiprecision::log(ctx.target_tol() / (1000 * growth));
  const std::uint64_t limit =
      ZetaEngine::mangoldt_terms(sigma.convert_to<double>(), log_tol.convert_to<double>());
  if (limit > 50'000'000) throw PrecisionInfeasibleError("Dirichlet tail needs too many terms");
  const Complex phase = expi(a * Y);
  Complex sum;
  for (std::uint64_t m = 2; m <= limit; ++m) {
    const std::uint64_t p = prime_power_base(m);
    if (p == 1) continue;
    const Real lm = log_int(static_cast<unsigned long>(m));
    const Real lp = log_int(static_cast<unsigned long>(p));
    // m^{-(sigma - ic)} / (ln m - ia)
    Complex term = expi(c * lm) * boost::multiprecision::exp(-sigma * lm);
    term /= Complex(lm, -a);
    sum -= term * lp;
  }
  return (sum * phase * growth).times_i();
}

EdgeResult vertical_edge_integral(const ContourSpec& spec, const PrecisionContext& ctx) {
  ZetaEngine engine(ctx);
  return EdgeQuadrature(engine).vertical(spec);
}

EdgeResult horizontal_edge_integral(const ContourSpec& spec, const PrecisionContext& ctx) {
  ZetaEngine engine(ctx);
  return EdgeQuadrature(engine).horizontal(spec);
}

Complex dirichlet_tail(const Real& Y, const ContourSpec& spec, const PrecisionContext& ctx) {
  ZetaEngine engine(ctx);
  return EdgeQuadrature(engine).dirichlet_tail(Y, spec);
}

}  // namespace polya
