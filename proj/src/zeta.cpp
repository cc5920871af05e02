#include "polya/zeta.hpp"

#include "polya/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polya {

namespace {

constexpr std::uint64_t kLogTableSize = 2048;
constexpr std::uint64_t kDirectDirichletLimit = 4096;

std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

/// a^{-s} for a = e^{log_a}
Complex power_minus_s(const Complex& s, const Real& log_a) {
  Complex u = expi(-s.im * log_a);
  u *= boost::multiprecision::exp(-s.re * log_a);
  return u;
}

}  // namespace

std::string_view to_string(EvalMethod method) {
  switch (method) {
    case EvalMethod::euler_maclaurin: return "em";
    case EvalMethod::dirichlet: return "dirichlet";
    case EvalMethod::reflection: return "reflect";
    case EvalMethod::automatic: return "auto";
  }
  return "auto";
}

EvalMethod parse_method(std::string_view name) {
  if (name == "em" || name == "euler_maclaurin") return EvalMethod::euler_maclaurin;
  if (name == "dirichlet") return EvalMethod::dirichlet;
  if (name == "reflect" || name == "reflection") return EvalMethod::reflection;
  if (name == "auto" || name == "automatic") return EvalMethod::automatic;
  throw DomainError("unknown evaluation method '" + std::string(name) + "'");
}

std::uint64_t prime_power_base(std::uint64_t m) {
  if (m < 2) return 1;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return m;  // m itself is prime
  while (m % p == 0) m /= p;
  return m == 1 ? p : 1;
}

Real mangoldt(std::uint64_t m) {
  if (m == 0) throw DomainError("mangoldt: m must be positive");
  const std::uint64_t p = prime_power_base(m);
  return p == 1 ? Real(0) : log_int(p);
}

ZetaEngine::ZetaEngine(const PrecisionContext& ctx, std::uint64_t max_terms)
    : special_(ctx), max_terms_(max_terms) {
  PrecisionScope scope(context());
  log_table_.reserve(kLogTableSize + 1);
  log_table_.emplace_back(0);
  log_table_.emplace_back(0);
  for (std::uint64_t k = 2; k <= kLogTableSize; ++k) log_table_.push_back(log_int(k));

  const int m = static_cast<int>(std::ceil(0.7 * context().digits));
  const auto bern = bernoulli_even(m);
  Real factorial(1);
  em_coeffs_.reserve(m);
  for (int j = 1; j <= m; ++j) {
    factorial *= (2 * j - 1) * (2 * j);
    em_coeffs_.push_back(bern[j - 1] / factorial);
  }
  log_two_pi_ = boost::multiprecision::log(2 * pi());
  log_tail_ = -(context().tol_digits + 3) * boost::multiprecision::log(Real(10));
}

const Real& ZetaEngine::log_k(std::uint64_t k) const {
  if (k < log_table_.size()) return log_table_[k];
  thread_local Real scratch;
  scratch = log_int(k);
  return scratch;
}

std::pair<int, int> ZetaEngine::em_truncation(const Complex& s) const {
  const double t = std::fabs(s.im.convert_to<double>());
  const double sigma = s.re.convert_to<double>();
  // Large negative abscissae need N beyond |s| for the remainder to shrink.
  const double n = std::max({20.0, std::ceil(1.3 * context().digits + 0.5 * t),
                             std::ceil(2.0 * std::fabs(sigma) + 0.5 * t)});
  if (n > static_cast<double>(max_terms_)) {
    throw PrecisionInfeasibleError("Euler-Maclaurin would need " + std::to_string(n) +
                                   " terms at this height");
  }
  return {static_cast<int>(n), static_cast<int>(em_coeffs_.size())};
}

void ZetaEngine::check_singularity(const Complex& s) const {
  const Real radius(kExclusionRadius);
  if (abs(s - Real(1)) < radius) {
    throw PoleError("zeta has a pole at s = 1; refusing evaluation inside the exclusion radius");
  }
  if (boost::multiprecision::abs(s.im) < radius && s.re < -1) {
    Real even = 2 * boost::multiprecision::round(s.re / 2);
    if (boost::multiprecision::abs(s.re - even) < radius) {
      throw PoleError("s is within the exclusion radius of the trivial zero " +
                      to_decimal(even, 3));
    }
  }
}

ZetaValues ZetaEngine::euler_maclaurin(const Complex& s) const {
  PrecisionScope scope(context());
  if (abs(s - Real(1)) < Real(kExclusionRadius)) {
    throw PoleError("zeta has a pole at s = 1");
  }
  const auto [n, m] = em_truncation(s);
  const auto spf = smallest_prime_factors(static_cast<std::uint64_t>(n));

  // k^{-s} from prime powers; composites by multiplication.
  std::vector<Complex> pw(n + 1);
  pw[1] = Complex(1);
  for (int k = 2; k <= n; ++k) {
    if (spf[k] == static_cast<std::uint32_t>(k)) {
      pw[k] = power_minus_s(s, log_k(k));
    } else {
      pw[k] = pw[spf[k]] * pw[k / spf[k]];
    }
  }

  Complex z, zp;
  for (int k = 1; k < n; ++k) {
    z += pw[k];
    zp -= pw[k] * log_k(k);
  }
  const Real& ln_n = log_k(n);
  const Complex s_minus_1 = s - Real(1);
  const Complex integral = pw[n] * Real(n) / s_minus_1;  // N^{1-s}/(s-1)
  z += integral;
  zp -= integral * ln_n + integral / s_minus_1;
  const Complex half = pw[n] / Real(2);
  z += half;
  zp -= half * ln_n;

  const Real eps2 = boost::multiprecision::pow(Real(10), -2 * context().working_digits());
  const Real inv_n2 = Real(1) / (Real(n) * n);
  Complex rising = s;        // s (s+1) ... (s+2j-2)
  Complex rising_d(1);       // its s-derivative
  Complex base = pw[n] / Real(n);  // N^{-s-2j+1}
  for (int j = 1; j <= m; ++j) {
    const Real& c = em_coeffs_[j - 1];
    Complex term = rising * base * c;
    Complex term_d = (rising_d - rising * ln_n) * base * c;
    z += term;
    zp += term_d;
    if (j >= 2 && norm(term) < eps2 * norm(z) && norm(term_d) < eps2 * norm(zp)) break;
    const Complex f1 = s + Real(2 * j - 1);
    const Complex f2 = s + Real(2 * j);
    const Complex f12 = f1 * f2;
    rising_d = rising_d * f12 + rising * (s * Real(2) + Real(4 * j - 1));
    rising *= f12;
    base *= inv_n2;
  }
  return {z, zp};
}

std::uint64_t ZetaEngine::mangoldt_terms(double sigma, double log_tail_tol) {
  constexpr auto kNever = std::numeric_limits<std::uint64_t>::max();
  if (!(sigma > 1.0)) return kNever;
  const double sm1 = sigma - 1.0;
  // sum_{m > M} Lambda(m) m^-sigma <= int_M^inf ln x x^-sigma dx
  auto log_bound = [&](double big_m) {
    const double lm = std::log(big_m);
    return -sm1 * lm + std::log(lm / sm1 + 1.0 / (sm1 * sm1));
  };
  double hi = 4.0;
  while (log_bound(hi) > log_tail_tol) {
    hi *= 2.0;
    if (hi > 1e15) return kNever;
  }
  double lo = std::max(3.0, hi / 2.0);
  while (hi - lo > std::max(1.0, hi * 1e-9)) {
    const double mid = std::floor((lo + hi) / 2.0);
    if (log_bound(mid) > log_tail_tol) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<std::uint64_t>(hi);
}

Complex ZetaEngine::log_deriv_mangoldt(const Complex& s) const {
  PrecisionScope scope(context());
  const double sigma = s.re.convert_to<double>();
  if (!(sigma > 1.0 + kDirichletMargin)) {
    throw MethodDomainError("Dirichlet series needs Re(s) > 1.25");
  }
  const std::uint64_t limit = mangoldt_terms(sigma, log_tail_.convert_to<double>());
  if (limit > max_terms_) {
    throw PrecisionInfeasibleError("Dirichlet series would need " + std::to_string(limit) +
                                   " terms");
  }
  Complex acc;
  for (std::uint64_t p : primes_up_to(limit)) {
    const Real& lp = log_k(p);
    const Real lp_copy = lp;
    const Complex base = power_minus_s(s, lp_copy);
    Complex term = base;
    for (std::uint64_t q = p; q <= limit; q *= p) {
      acc += term * lp_copy;
      term *= base;
      if (q > limit / p) break;
    }
  }
  return -acc;
}

Complex ZetaEngine::log_deriv_eta(const Complex& s) const {
  const double sigma = s.re.convert_to<double>();
  if (!(sigma > 1.0 + kDirichletMargin)) {
    throw MethodDomainError("Dirichlet series needs Re(s) > 1.25");
  }
  const double t = std::fabs(s.im.convert_to<double>());
  // The acceleration loses about pi|t|/2 nepers to cancellation; carry them as extra digits.
  const int extra = static_cast<int>(std::ceil(M_PI * t / 2.0 / std::log(10.0))) + 10;
  const int digits = context().working_digits() + extra;
  Complex result;
  {
    PrecisionScope scope(static_cast<unsigned>(digits));
    const int n = static_cast<int>(std::ceil(digits * std::log(10.0) /
                                             std::log(3.0 + std::sqrt(8.0)))) + 2;
    Real d = boost::multiprecision::pow(Real(3) + boost::multiprecision::sqrt(Real(8)), n);
    d = (d + Real(1) / d) / 2;
    Real b(-1);
    Real c = -d;
    Complex eta, eta_log;
    const Complex sh(rounded(s.re), rounded(s.im));
    for (int k = 0; k < n; ++k) {
      c = b - c;
      const Real lk = log_int(static_cast<unsigned long>(k + 1));
      const Complex a = power_minus_s(sh, lk);
      eta += a * c;
      eta_log += a * (c * lk);
      b = b * Real(2LL * (k + n) * (k - n)) / Real((2LL * k + 1) * (k + 1));
    }
    // eta_log / d = -eta'(s); zeta = eta / (1 - 2^{1-s})
    const Real ln2 = log_int(2);
    const Complex q = power_minus_s(sh - Real(1), ln2);  // 2^{1-s}
    result = -eta_log / eta - q * ln2 / (Real(1) - q);
  }
  PrecisionScope scope(context());
  return rounded(result);
}

Complex ZetaEngine::log_deriv_reflection(const Complex& s) const {
  PrecisionScope scope(context());
  if (!(s.re < Real(1) / 2)) {
    throw MethodDomainError("reflection is only used for Re(s) < 1/2");
  }
  const Complex reflected = Real(1) - s;
  Complex r = special_.cot_half_pi(s) * (pi() / 2);
  r.re += log_two_pi_;
  r -= special_.digamma(reflected);
  r -= log_deriv(reflected, EvalMethod::automatic);
  return r;
}

Complex ZetaEngine::log_deriv(const Complex& s, EvalMethod method) const {
  PrecisionScope scope(context());
  check_singularity(s);
  const Real half = Real(1) / 2;
  const double sigma = s.re.convert_to<double>();
  Complex r;
  switch (method) {
    case EvalMethod::euler_maclaurin: {
      const ZetaValues v = euler_maclaurin(s);
      if (norm(v.zeta) == 0) throw PoleError("zeta vanishes at s");
      r = v.zeta_prime / v.zeta;
      break;
    }
    case EvalMethod::dirichlet: {
      if (!(sigma > 1.0 + kDirichletMargin)) {
        throw MethodDomainError("Dirichlet series needs Re(s) > 1.25");
      }
      if (mangoldt_terms(sigma, log_tail_.convert_to<double>()) <= kDirectDirichletLimit) {
        r = log_deriv_mangoldt(s);
      } else {
        r = log_deriv_eta(s);
      }
      break;
    }
    case EvalMethod::reflection:
      r = log_deriv_reflection(s);
      break;
    case EvalMethod::automatic: {
      if (s.re < half && norm(s) >= Real(1) / 16) {
        r = log_deriv_reflection(s);
      } else if (sigma > 1.0 + kDirichletMargin &&
                 mangoldt_terms(sigma, log_tail_.convert_to<double>()) <=
                     static_cast<std::uint64_t>(em_truncation(s).first)) {
        r = log_deriv_mangoldt(s);
      } else {
        const ZetaValues v = euler_maclaurin(s);
        if (norm(v.zeta) == 0) throw PoleError("zeta vanishes at s");
        r = v.zeta_prime / v.zeta;
      }
      break;
    }
  }
  if (abs(r) * Real(kExclusionRadius) > 1) {
    throw PoleError("s is within the exclusion radius of a zero of zeta");
  }
  return r;
}

Real ZetaEngine::dirichlet_bound(const Real& sigma) const {
  PrecisionScope scope(context());
  if (!(sigma > 1)) throw DomainError("Dirichlet bound needs sigma > 1");
  // |sum Lambda(m) m^{-sigma-it}| <= sum Lambda(m) m^{-sigma} = -zeta'/zeta(sigma)
  return -log_deriv(Complex(sigma), EvalMethod::automatic).re;
}

Complex zeta_em(const Complex& s, const PrecisionContext& ctx) {
  return ZetaEngine(ctx).zeta(s);
}

Complex zeta_prime_em(const Complex& s, const PrecisionContext& ctx) {
  return ZetaEngine(ctx).zeta_prime(s);
}

Complex log_deriv(const Complex& s, EvalMethod method, const PrecisionContext& ctx) {
  return ZetaEngine(ctx).log_deriv(s, method);
}

}  // namespace polya
