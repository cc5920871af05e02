#pragma once

#include "polya/contour.hpp"
#include "polya/precision.hpp"
#include "polya/zeros.hpp"

#include <string>
#include <vector>

namespace polya {

/// C_m(kappa) with zeta'/zeta(kappa - 2 delta) = sum_m C_m delta^m.
struct TaylorSeries {
  Complex kappa;
  std::vector<Complex> coeffs;
  Real radius_estimate;  // in delta units, from the ratio test
  Real cauchy_radius;    // circle radius in s used for the coefficients
  int points = 0;        // trapezoid nodes on that circle

  Complex partial_sum(const Real& delta, int order) const;
  /// |C_m delta^m| for m = 0..order.
  std::vector<Real> term_magnitudes(const Real& delta) const;
};

/// Distance from s to the nearest possible singularity of zeta'/zeta: the pole, a trivial
/// zero, or the zero-bearing part of the critical strip (|Im| >= 14).
Real singularity_distance(const Complex& s);

/// The truncated operator as its diagonal in the oscillator eigenbasis.
struct DiagonalOperator {
  int dim = 0;
  std::vector<Complex> entries;  // h_0 .. h_{dim-1}
  Complex omega;
  Real sigma_used;
};

Real spectrum_deviation(const DiagonalOperator& op);
/// |h_n - (n + 1/2)| over n >= first only.
Real spectrum_deviation(const DiagonalOperator& op, int first);
/// CSV with header n,h_re,h_im,target,abs_dev.
std::string to_csv(const DiagonalOperator& op, int digits);

struct ScanPoint {
  Real delta;
  Real residual;
};

struct FixedPointScan {
  std::vector<ScanPoint> grid;
  std::vector<ScanPoint> minima;  // strict interior minima of each continuity segment
  std::vector<Real> breaks;       // abscissae where the residual jumps
  Complex omega;
};

/// Builds the diagonal operator from F and G evaluated at the oscillator eigenvalues.
class OperatorBuilder {
 public:
  explicit OperatorBuilder(const PrecisionContext& ctx);

  const PrecisionContext& context() const { return verifier_.context(); }
  const ContourVerifier& verifier() const { return verifier_; }

  /// int_{-1}^inf zeta'/zeta(5/4 + it - 2 delta) e^{-pi t} dt
  Complex F(const Real& delta) const;
  /// int_0^inf zeta'/zeta(y + 5/4 - 2 delta - i)(i cos(pi y) - sin(pi y)) dy
  Complex G(const Real& delta) const;
  /// (-1-i)/(2 sqrt(2) pi) * (F + e^pi G)
  Complex combination(const Real& delta) const;

  TaylorSeries taylor(const Complex& kappa, int order) const;

  /// omega from the residue side, optionally with perturbed zeros folded into it.
  Complex omega(const ZeroCatalog& catalog, const std::vector<Perturbation>& perturbations = {}) const;

  DiagonalOperator build(int dim, const ZeroCatalog& catalog,
                         const std::vector<Perturbation>& perturbations = {}) const;

  /// Residual |combination(delta) - omega - delta| on a grid from lo to hi.
  FixedPointScan scan(const Real& lo, const Real& hi, const Real& step,
                      const ZeroCatalog& catalog) const;

 private:
  ContourVerifier verifier_;
};

/// h_n = combination values (index n) minus omega.
DiagonalOperator assemble_operator(const std::vector<Complex>& combinations, const Complex& omega,
                                   const Real& sigma_used);

/// Abscissae delta in (lo, hi) at which 5/4 - 2 delta meets the pole, a trivial zero or the critical line.
std::vector<Real> singular_deltas(const Real& lo, const Real& hi);

// Free-function forms.
Complex F_eval(const Real& delta, const PrecisionContext& ctx);
Complex G_eval(const Real& delta, const PrecisionContext& ctx);
TaylorSeries taylor_coeffs(const Complex& kappa, int order, const PrecisionContext& ctx);
DiagonalOperator build_operator(int dim, const ZeroCatalog& catalog, const PrecisionContext& ctx);
/// Grid starts at delta_min (0.1 by convention) and steps by `step` up to delta_max.
FixedPointScan fixed_point_scan(const Real& delta_min, const Real& delta_max, const Real& step,
                                const ZeroCatalog& catalog, const PrecisionContext& ctx);

}  // namespace polya
