#pragma once

#include "polya/precision.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polya {

/// Evaluation route for zeta'/zeta.
///
/// `dirichlet` is only valid for Re(s) > 1 + 0.25 and `reflection` only for
/// Re(s) < 1/2; `automatic` picks the cheapest valid route.
enum class EvalMethod { euler_maclaurin, dirichlet, reflection, automatic };

std::string_view to_string(EvalMethod method);
/// Accepts "em", "dirichlet", "reflect" and "auto" (and the long enum names).
EvalMethod parse_method(std::string_view name);

/// Lambda(m): ln p when m = p^k for a prime p, else 0.
Real mangoldt(std::uint64_t m);
/// The prime p when m = p^k, else 1 (so that Lambda(m) = ln of the result).
std::uint64_t prime_power_base(std::uint64_t m);

struct ZetaValues {
  Complex zeta;
  Complex zeta_prime;
};

/// Evaluates zeta, zeta' and zeta'/zeta at one precision.
///
/// Construction builds the precision-specific tables (logarithms, Bernoulli
/// numbers, special-function data); every evaluation afterwards is a pure
/// function of its argument, so one engine can be shared freely.
class ZetaEngine {
 public:
  static constexpr double kDirichletMargin = 0.25;
  static constexpr double kExclusionRadius = 1e-6;

  explicit ZetaEngine(const PrecisionContext& ctx, std::uint64_t max_terms = 2'000'000);

  const PrecisionContext& context() const { return special_.context(); }
  const SpecialFunctions& special() const { return special_; }
  const Real& pi() const { return special_.pi(); }
  const Real& tol() const { return special_.tol(); }

  /// zeta and zeta' together by Euler-Maclaurin summation (term-wise differentiated for zeta').
  ZetaValues euler_maclaurin(const Complex& s) const;
  Complex zeta(const Complex& s) const { return euler_maclaurin(s).zeta; }
  Complex zeta_prime(const Complex& s) const { return euler_maclaurin(s).zeta_prime; }

  /// zeta'/zeta(s) by the requested route, refusing points within the exclusion radius
  /// of a zero or of the pole.
  Complex log_deriv(const Complex& s, EvalMethod method = EvalMethod::automatic) const;

  /// -sum Lambda(m) m^-s truncated with a certified tail below the working tolerance.
  Complex log_deriv_mangoldt(const Complex& s) const;
  /// zeta'/zeta from the alternating Dirichlet series of eta and eta' (Cohen-Villegas-Zagier).
  Complex log_deriv_eta(const Complex& s) const;
  /// ln(2 pi) + (pi/2) cot(pi s/2) - psi(1-s) - zeta'/zeta(1-s).
  Complex log_deriv_reflection(const Complex& s) const;

  /// Number of Dirichlet terms M whose certified tail is below `tail_tol` at Re(s) = sigma.
  static std::uint64_t mangoldt_terms(double sigma, double log_tail_tol);
  /// Upper bound for |zeta'/zeta(sigma + it)| over all real t, valid for sigma > 1.
  Real dirichlet_bound(const Real& sigma) const;

  /// (N, M) Euler-Maclaurin truncation used at s.
  std::pair<int, int> em_truncation(const Complex& s) const;

 private:
  const Real& log_k(std::uint64_t k) const;
  void check_singularity(const Complex& s) const;

  SpecialFunctions special_;
  std::uint64_t max_terms_;
  std::vector<Real> log_table_;
  std::vector<Real> em_coeffs_;  // B_2j / (2j)!
  Real log_two_pi_;
  Real log_tail_;  // natural log of the absolute truncation tolerance for series
};

// Convenience wrappers that build a throwaway engine.
Complex zeta_em(const Complex& s, const PrecisionContext& ctx);
Complex zeta_prime_em(const Complex& s, const PrecisionContext& ctx);
Complex log_deriv(const Complex& s, EvalMethod method, const PrecisionContext& ctx);

}  // namespace polya
