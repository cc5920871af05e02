#include "polya/precision.hpp"

#include "polya/errors.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace polya {

PrecisionContext PrecisionContext::with_digits(int digits, int guard) {
  PrecisionContext ctx;
  ctx.digits = digits;
  ctx.guard = guard;
  ctx.tol_digits = digits - kGuardMargin;
  ctx.validate();
  return ctx;
}

Real PrecisionContext::target_tol() const {
  PrecisionScope scope(*this);
  return boost::multiprecision::pow(Real(10), -tol_digits);
}

void PrecisionContext::validate() const {
  if (digits < kMinDigits) {
    throw DomainError("precision must be at least " + std::to_string(kMinDigits) + " digits");
  }
  if (guard < kMinGuard) {
    throw DomainError("guard digits must be at least " + std::to_string(kMinGuard));
  }
  if (tol_digits <= 0 || tol_digits > digits - kGuardMargin) {
    throw DomainError("target tolerance 1e-" + std::to_string(tol_digits) +
                      " is tighter than the precision supports");
  }
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx)
    : PrecisionScope(static_cast<unsigned>(ctx.working_digits())) {}

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

// ---------------------------------------------------------------------------
// Complex arithmetic

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps the intermediate scale bounded.
  using boost::multiprecision::abs;
  if (abs(o.re) >= abs(o.im)) {
    Real ratio = o.im / o.re;
    Real denom = o.re + o.im * ratio;
    Real r = (re + im * ratio) / denom;
    im = (im - re * ratio) / denom;
    re = std::move(r);
  } else {
    Real ratio = o.re / o.im;
    Real denom = o.re * ratio + o.im;
    Real r = (re * ratio + im) / denom;
    im = (im * ratio - re) / denom;
    re = std::move(r);
  }
  return *this;
}

Complex& Complex::operator*=(const Real& r) {
  re *= r;
  im *= r;
  return *this;
}

Complex& Complex::operator/=(const Real& r) {
  re /= r;
  im /= r;
  return *this;
}

Complex operator-(const Complex& z) { return {-z.re, -z.im}; }
Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator+(Complex a, const Real& b) {
  a.re += b;
  return a;
}
Complex operator-(Complex a, const Real& b) {
  a.re -= b;
  return a;
}
Complex operator*(Complex a, const Real& b) { return a *= b; }
Complex operator*(const Real& a, Complex b) { return b *= a; }
Complex operator/(Complex a, const Real& b) { return a /= b; }
Complex operator/(const Real& a, const Complex& b) { return Complex(a) /= b; }
Complex operator+(const Real& a, const Complex& b) { return Complex(a) += b; }
Complex operator-(const Real& a, const Complex& b) { return Complex(a) -= b; }

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im, z.re); }
Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex expi(const Real& theta) {
  Real s, c;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), theta.backend().data(), MPFR_RNDN);
  return {c, s};
}

Complex exp(const Complex& z) {
  Complex u = expi(z.im);
  u *= boost::multiprecision::exp(z.re);
  return u;
}

Complex log(const Complex& z) { return {boost::multiprecision::log(abs(z)), arg(z)}; }

Complex inverse(const Complex& z) { return Complex(1) / z; }

Real rounded(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Complex rounded(const Complex& z) { return {rounded(z.re), rounded(z.im)}; }

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << '(' << z.re << (z.im < 0 ? " - " : " + ") << boost::multiprecision::abs(z.im)
            << "i)";
}

Real pi_value() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

Real parse_real(const std::string& text) {
  Real x;
  const char* begin = text.c_str();
  char* end = nullptr;
  mpfr_strtofr(x.backend().data(), begin, &end, 10, MPFR_RNDN);
  if (end == begin || *end != '\0') {
    throw DomainError("not a decimal number: '" + text + "'");
  }
  return x;
}

std::string to_decimal(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

Real log_int(unsigned long n) {
  Real x(n);
  mpfr_log(x.backend().data(), x.backend().data(), MPFR_RNDN);
  return x;
}

std::vector<Real> bernoulli_even(int count) {
  using boost::multiprecision::mpq_rational;
  using boost::multiprecision::mpz_int;
  // B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k with B_1 = -1/2 and the other odd B vanishing.
  const int top = 2 * count;
  std::vector<mpq_rational> b(top + 1);
  b[0] = 1;
  if (top >= 1) b[1] = mpq_rational(-1, 2);
  for (int m = 2; m <= top; ++m) {
    if (m % 2 == 1) continue;
    std::vector<mpz_int> row(m + 2);
    row[0] = 1;
    for (int k = 1; k <= m + 1; ++k) row[k] = row[k - 1] * (m + 2 - k) / k;
    mpq_rational acc = b[0] + mpq_rational(row[1]) * b[1];
    for (int k = 2; k < m; k += 2) acc += mpq_rational(row[k]) * b[k];
    b[m] = -acc / (m + 1);
  }
  std::vector<Real> out;
  out.reserve(count);
  for (int j = 1; j <= count; ++j) {
    const mpq_rational& q = b[2 * j];
    Real num, den;
    mpfr_set_z(num.backend().data(), boost::multiprecision::numerator(q).backend().data(),
               MPFR_RNDN);
    mpfr_set_z(den.backend().data(), boost::multiprecision::denominator(q).backend().data(),
               MPFR_RNDN);
    out.push_back(num / den);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Special functions

namespace {

bool near_integer(const Real& x, const Real& tol, long* nearest) {
  Real r = boost::multiprecision::round(x);
  *nearest = r.convert_to<long>();
  return boost::multiprecision::abs(x - r) <= tol;
}

}  // namespace

SpecialFunctions::SpecialFunctions(const PrecisionContext& ctx) : ctx_(ctx) {
  ctx_.validate();
  PrecisionScope scope(ctx_);
  pi_ = pi_value();
  tol_ = boost::multiprecision::pow(Real(10), -ctx_.tol_digits);
  const int terms = std::max(60, ctx_.digits);
  auto b = bernoulli_even(terms);
  stirling_.reserve(b.size());
  for (int k = 1; k <= terms; ++k) stirling_.push_back(b[k - 1] / (2 * k));
}

Complex SpecialFunctions::digamma(const Complex& s) const {
  PrecisionScope scope(ctx_);
  long nearest = 0;
  if (boost::multiprecision::abs(s.im) <= tol_ && near_integer(s.re, tol_, &nearest) &&
      nearest <= 0) {
    throw PoleError("digamma has a pole at s = " + std::to_string(nearest));
  }
  const Real threshold = Real(3 * ctx_.digits) / 2;
  const Real threshold2 = threshold * threshold;
  Complex z = s;
  Complex shifted;  // sum of 1/(s+k) over the recurrence steps
  while (norm(z) <= threshold2) {
    shifted += inverse(z);
    z.re += 1;
  }
  const Complex inv = inverse(z);
  const Complex inv2 = inv * inv;
  Complex result = log(z) - inv / Real(2);
  Complex power = inv2;
  const Real eps2 = boost::multiprecision::pow(Real(10), -2 * ctx_.working_digits());
  for (const Real& coeff : stirling_) {
    Complex term = power * coeff;
    result -= term;
    if (norm(term) < eps2 * norm(result)) break;
    power *= inv2;
  }
  return result - shifted;
}

Complex SpecialFunctions::cot_half_pi(const Complex& s) const {
  PrecisionScope scope(ctx_);
  long nearest = 0;
  if (boost::multiprecision::abs(s.im) <= tol_ && near_integer(s.re, tol_, &nearest) &&
      nearest % 2 == 0) {
    throw PoleError("cot(pi s/2) has a pole at s = " + std::to_string(nearest));
  }
  const Real half_pi = pi_ / 2;
  const Real wr = s.re * half_pi;
  const Real wi = s.im * half_pi;
  const Complex one(1);
  if (wi >= 0) {
    // q = e^{2iw}, |q| <= 1
    Complex q = expi(2 * wr) * boost::multiprecision::exp(-2 * wi);
    return ((q + one) / (q - one)).times_i();
  }
  // q = e^{-2iw}, |q| < 1
  Complex q = expi(-2 * wr) * boost::multiprecision::exp(2 * wi);
  return ((one + q) / (one - q)).times_i();
}

Complex digamma(const Complex& s, const PrecisionContext& ctx) {
  return SpecialFunctions(ctx).digamma(s);
}

Complex cot_half_pi(const Complex& s, const PrecisionContext& ctx) {
  return SpecialFunctions(ctx).cot_half_pi(s);
}

}  // namespace polya
