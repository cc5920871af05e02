#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace polya {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Working precision and tolerance policy shared by every numeric operation.
///
/// `digits` is the precision results are promised to; `guard` extra digits are
/// carried internally.  The acceptance tolerance is 10^-tol_digits and may never
/// be tighter than 10^-(digits - 5).
struct PrecisionContext {
  int digits = 50;
  int guard = 15;
  int tol_digits = 45;

  static constexpr int kMinDigits = 20;
  static constexpr int kMinGuard = 10;
  static constexpr int kGuardMargin = 5;

  /// Context with the default tolerance for `digits` (10^-(digits-5)).
  static PrecisionContext with_digits(int digits, int guard = 15);

  int working_digits() const { return digits + guard; }
  Real target_tol() const;
  void validate() const;
};

/// Sets the precision of newly created `Real` values for the lifetime of the scope.
///
/// Values keep the precision they were created with, so results returned from
/// a scope remain valid after it ends.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx);
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  explicit Complex(const Real& r) : re(r), im(0) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(int r, int i = 0) : re(r), im(i) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& r);
  Complex& operator/=(const Real& r);

  /// i * z
  Complex times_i() const { return {-im, re}; }
};

Complex operator-(const Complex& z);
Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator+(Complex a, const Real& b);
Complex operator-(Complex a, const Real& b);
Complex operator*(Complex a, const Real& b);
Complex operator*(const Real& a, Complex b);
Complex operator/(Complex a, const Real& b);
Complex operator/(const Real& a, const Complex& b);
Complex operator+(const Real& a, const Complex& b);
Complex operator-(const Real& a, const Complex& b);

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex inverse(const Complex& z);
/// Copy rounded to the current scope precision (assignment would keep the source precision).
Real rounded(const Real& x);
Complex rounded(const Complex& z);
/// e^{i theta}
Complex expi(const Real& theta);

std::ostream& operator<<(std::ostream& os, const Complex& z);

Real pi_value();
/// Exact decimal parse at the current scope precision.
Real parse_real(const std::string& text);
/// Scientific decimal string with `digits` significant digits.
std::string to_decimal(const Real& x, int digits);
/// ln x for positive integers, at the current scope precision.
Real log_int(unsigned long n);

/// B_2, B_4, ..., B_{2 count} at the current scope precision (exact rationals, then rounded).
std::vector<Real> bernoulli_even(int count);

/// Special functions needed by the functional-equation reflection of zeta'/zeta.
///
/// Holds precision-specific tables; construct once per context and reuse.
class SpecialFunctions {
 public:
  explicit SpecialFunctions(const PrecisionContext& ctx);

  const PrecisionContext& context() const { return ctx_; }

  /// psi(s) by upward recurrence to |s + N| > 1.5 * digits, then the Stirling series.
  Complex digamma(const Complex& s) const;
  /// cot(pi s / 2), via the exponential form that cannot overflow for large |Im s|.
  Complex cot_half_pi(const Complex& s) const;

  const Real& pi() const { return pi_; }
  const Real& tol() const { return tol_; }

 private:
  PrecisionContext ctx_;
  Real pi_;
  Real tol_;
  std::vector<Real> stirling_;  // B_2k / (2k)
};

Complex digamma(const Complex& s, const PrecisionContext& ctx);
Complex cot_half_pi(const Complex& s, const PrecisionContext& ctx);

}  // namespace polya
