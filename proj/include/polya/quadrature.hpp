#pragma once

#include "polya/contour_spec.hpp"
#include "polya/precision.hpp"
#include "polya/zeta.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace polya {

using RealIntegrand = std::function<Complex(const Real&)>;

/// Fixed-order Gauss-Legendre rule on [-1, 1], nodes refined by Newton at the requested precision.
class GaussLegendreRule {
 public:
  GaussLegendreRule(int order, unsigned digits10);

  int order() const { return order_; }
  /// One panel: integral of f over [lo, hi].
  Complex apply(const RealIntegrand& f, const Real& lo, const Real& hi) const;

  const std::vector<Real>& nodes() const { return nodes_; }    // positive half
  const std::vector<Real>& weights() const { return weights_; }

 private:
  int order_;
  std::vector<Real> nodes_;
  std::vector<Real> weights_;
};

struct PanelScheme {
  int rule = 32;
  int max_depth = 40;
  Real abs_tol;

  static PanelScheme for_context(const PrecisionContext& ctx);
};

struct QuadratureResult {
  Complex value;
  Real error;  // sum of accepted panel estimates
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

/// Bisecting panel integrator.
///
/// A panel is accepted when the single-panel rule and the sum over its two
/// halves agree to the panel tolerance; the halves are then kept. Initial
/// panels share abs_tol equally and each bisection halves the share, so the
/// accepted estimates add up to at most abs_tol. Panels are visited left to
/// right, which keeps the summation order (and the rounding) reproducible.
class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(const PrecisionContext& ctx, PanelScheme scheme);

  const PanelScheme& scheme() const { return scheme_; }
  const PrecisionContext& context() const { return ctx_; }

  QuadratureResult integrate(const RealIntegrand& f, const Real& lo, const Real& hi,
                             int initial_panels = 1) const;
  QuadratureResult integrate(const RealIntegrand& f, const Real& lo, const Real& hi,
                             int initial_panels, const Real& abs_tol) const;

 private:
  PrecisionContext ctx_;
  PanelScheme scheme_;
  GaussLegendreRule rule_;
};

QuadratureResult integrate_panel_adaptive(const RealIntegrand& f, const Real& lo, const Real& hi,
                                          const PanelScheme& scheme, const PrecisionContext& ctx);

/// Where the horizontal edge stops being integrated numerically.
enum class HorizonMode {
  analytic_tail,     // stop early at Re = kTailSwitchSigma and add the Dirichlet tail
  pure_quadrature,   // run until 2^-(Y+b-1) < 10^-digits; the remainder is only bounded
};

struct TruncationPlan {
  Real T_vertical;
  Real Y_horizontal;
  Real tail_bound;  // vertical tail bound + horizontal remainder bound
};

struct EdgeResult {
  Complex value;
  Real quad_error;
  Real tail_bound;
  Real limit;  // T or Y
  std::size_t evaluations = 0;
};

/// The two semi-infinite edges of the contour integral, with certified truncation.
class EdgeQuadrature {
 public:
  /// Abscissa at which the horizontal edge hands over to the Dirichlet tail.
  static constexpr double kTailSwitchSigma = 28.0;

  explicit EdgeQuadrature(const ZetaEngine& engine);

  const ZetaEngine& engine() const { return engine_; }

  TruncationPlan plan(const ContourSpec& spec, HorizonMode mode = HorizonMode::analytic_tail) const;

  /// int_{-c}^{T} zeta'/zeta(b + it) e^{-at} dt plus a bound for (T, inf).
  EdgeResult vertical(const ContourSpec& spec) const;
  EdgeResult vertical(const ContourSpec& spec, const Real& T) const;

  /// i e^{ac} int_0^inf zeta'/zeta(x + b - ic) e^{iax} dx.
  EdgeResult horizontal(const ContourSpec& spec, HorizonMode mode = HorizonMode::analytic_tail) const;
  EdgeResult horizontal(const ContourSpec& spec, const Real& Y, bool add_tail) const;

  /// The exact integral of the horizontal integrand over [Y, inf), summed term by term.
  Complex dirichlet_tail(const Real& Y, const ContourSpec& spec) const;

  /// |zeta'/zeta(b + it)| <= result for all t >= T.
  Real vertical_bound(const Real& b, const Real& T) const;

 private:
  const ZetaEngine& engine_;
  AdaptiveIntegrator integrator_;
};

// Free-function forms that build a throwaway engine.
EdgeResult vertical_edge_integral(const ContourSpec& spec, const PrecisionContext& ctx);
EdgeResult horizontal_edge_integral(const ContourSpec& spec, const PrecisionContext& ctx);
Complex dirichlet_tail(const Real& Y, const ContourSpec& spec, const PrecisionContext& ctx);

}  // namespace polya
