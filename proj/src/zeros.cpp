#include "polya/zeros.hpp"

#include "polya/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace polya {

namespace {

// Ordinates are stored with room for 40 significant digits plus headroom.
constexpr unsigned kStorageDigits = 80;

bool parse_int(const std::string& token, int* out) {
  try {
    std::size_t used = 0;
    const long v = std::stol(token, &used);
    if (used != token.size()) return false;
    *out = static_cast<int>(v);
    return v == *out;
  } catch (const std::exception&) {
    return false;
  }
}

Real term(const Real& a, const Real& t, int l) { return l * boost::multiprecision::exp(-a * t); }

Real abscissa_factor(const Real& sigma, const Real& pi) {
  return boost::multiprecision::cos(pi * (Real(1) / 2 - sigma));
}

}  // namespace

void Perturbation::validate() const {
  if (!(t > 0)) throw DomainError("perturbation ordinate must be positive");
  if (chi < 0 || !(chi < Real(1) / 2)) {
    throw DomainError("chi must lie in [0, 1/2), got " + to_decimal(chi, 6));
  }
}

Perturbation parse_perturbation(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("perturbation must look like t:chi, got '" + text + "'");
  }
  PrecisionScope scope(kStorageDigits);
  Perturbation p{parse_real(text.substr(0, colon)), parse_real(text.substr(colon + 1))};
  p.validate();
  return p;
}

ZeroCatalog::ZeroCatalog(std::vector<ZeroEntry> entries, std::string source)
    : entries_(std::move(entries)), source_(std::move(source)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const ZeroEntry& e = entries_[i];
    if (!(e.t > 1)) throw DomainError("zero ordinates must exceed 1");
    if (e.l < 1) throw DomainError("multiplicity must be positive");
    if (!(e.sigma > 0 && e.sigma < 1)) throw DomainError("zero abscissa must lie in (0, 1)");
    if (i > 0 && !(entries_[i - 1].t < e.t)) {
      throw DomainError("zero ordinates must be strictly ascending");
    }
  }
}

ZeroCatalog ZeroCatalog::parse(std::string_view text, const std::string& source) {
  PrecisionScope scope(kStorageDigits);
  std::vector<ZeroEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() > 3) {
      throw ParseError(source, line_no, tokens[3], "expected '<ordinate> [multiplicity] [sigma]'");
    }
    ZeroEntry e;
    try {
      e.t = parse_real(tokens[0]);
    } catch (const DomainError&) {
      throw ParseError(source, line_no, tokens[0], "ordinate is not a decimal number");
    }
    if (!(e.t > 1)) throw ParseError(source, line_no, tokens[0], "ordinate must exceed 1");
    if (tokens.size() >= 2 && (!parse_int(tokens[1], &e.l) || e.l < 1)) {
      throw ParseError(source, line_no, tokens[1], "multiplicity must be a positive integer");
    }
    e.sigma = Real(1) / 2;
    if (tokens.size() == 3) {
      try {
        e.sigma = parse_real(tokens[2]);
      } catch (const DomainError&) {
        throw ParseError(source, line_no, tokens[2], "sigma is not a decimal number");
      }
      if (!(e.sigma > 0 && e.sigma < 1)) {
        throw ParseError(source, line_no, tokens[2], "sigma must lie in the open strip (0, 1)");
      }
    }
    if (!entries.empty() && !(entries.back().t < e.t)) {
      throw ParseError(source, line_no, tokens[0],
                       entries.back().t == e.t
                           ? "duplicate ordinate; raise the multiplicity instead"
                           : "ordinates must be strictly ascending");
    }
    entries.push_back(std::move(e));
  }
  return ZeroCatalog(std::move(entries), source);
}

ZeroCatalog load_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open zero catalog '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ZeroCatalog::parse(buffer.str(), path);
}

std::vector<ZeroEntry> effective_zeros(const ZeroCatalog& catalog,
                                       const std::vector<Perturbation>& perturbations) {
  PrecisionScope scope(kStorageDigits);
  const Real match(kOrdinateMatch);
  std::vector<ZeroEntry> out;
  std::vector<bool> replaced(catalog.size(), false);
  std::vector<ZeroEntry> injected;
  for (const Perturbation& p : perturbations) {
    p.validate();
    bool matched = false;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      if (boost::multiprecision::abs(catalog.entries()[i].t - p.t) < match) {
        if (replaced[i]) throw DomainError("two perturbations target the same zero");
        replaced[i] = true;
        matched = true;
        const ZeroEntry& e = catalog.entries()[i];
        injected.push_back({e.t, e.l, Real(1) / 2 - p.chi});
        injected.push_back({e.t, e.l, Real(1) / 2 + p.chi});
        break;
      }
    }
    if (!matched) {
      injected.push_back({p.t, 1, Real(1) / 2 - p.chi});
      injected.push_back({p.t, 1, Real(1) / 2 + p.chi});
    }
  }
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (!replaced[i]) out.push_back(catalog.entries()[i]);
  }
  out.insert(out.end(), injected.begin(), injected.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const ZeroEntry& x, const ZeroEntry& y) { return x.t < y.t; });
  return out;
}

Real catalog_tail_bound(const ZeroCatalog& catalog, const Real& a) {
  if (catalog.empty()) return Real(0);
  // zeros beyond the catalog are at least one unit apart in this regime
  return boost::multiprecision::exp(-a * catalog.entries().back().t) /
         (1 - boost::multiprecision::exp(-a));
}

BoundedSum sigma_rh(const ZeroCatalog& catalog, const Real& a, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  if (!(a > 0)) throw DomainError("decay rate a must be positive");
  BoundedSum r{Real(0), Real(0)};
  for (const ZeroEntry& e : catalog.entries()) r.value += term(a, e.t, e.l);
  r.tail_bound = rounded(catalog_tail_bound(catalog, rounded(a)));
  return r;
}

Real sigma_pi(const ZeroCatalog& catalog, const std::vector<Perturbation>& perturbations,
              const Real& a, const PrecisionContext& ctx) {
  const auto zeros = effective_zeros(catalog, perturbations);
  PrecisionScope scope(ctx);
  if (!(a > 0)) throw DomainError("decay rate a must be positive");
  const Real pi = pi_value();
  Real sum(0);
  for (const ZeroEntry& e : zeros) sum += term(a, e.t, e.l) * abscissa_factor(e.sigma, pi);
  return sum;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::indistinguishable ? "INDISTINGUISHABLE" : "VIOLATION_DETECTED";
}

CriterionReport criterion_compare(const ZeroCatalog& catalog,
                                  const std::vector<Perturbation>& perturbations, const Real& a,
                                  const PrecisionContext& ctx) {
  CriterionReport r;
  const BoundedSum rh = sigma_rh(catalog, a, ctx);
  r.sigma_rh = rh.value;
  r.tail_bound = rh.tail_bound;
  r.sigma_pi = sigma_pi(catalog, perturbations, a, ctx);

  // The difference is accumulated per zero so that it does not cancel against the sums.
  const auto zeros = effective_zeros(catalog, perturbations);
  PrecisionScope scope(ctx);
  const Real pi = pi_value();
  const auto& cat = catalog.entries();
  Real diff(0);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < zeros.size()) {
    const Real t = zeros[i].t;
    Real local(0);
    for (; i < zeros.size() && zeros[i].t == t; ++i) {
      local += term(a, zeros[i].t, zeros[i].l) * abscissa_factor(zeros[i].sigma, pi);
    }
    for (; j < cat.size() && cat[j].t < t; ++j) diff -= term(a, cat[j].t, cat[j].l);
    for (; j < cat.size() && cat[j].t == t; ++j) local -= term(a, cat[j].t, cat[j].l);
    diff += local;
  }
  for (; j < cat.size(); ++j) diff -= term(a, cat[j].t, cat[j].l);
  r.difference = diff;
  r.resolution = boost::multiprecision::abs(r.sigma_rh) *
                 boost::multiprecision::pow(Real(10), -ctx.digits);
  const Real threshold = std::max<Real>(r.tail_bound, r.resolution);
  r.verdict = boost::multiprecision::abs(r.difference) > threshold ? Verdict::violation_detected
                                                                   : Verdict::indistinguishable;
  return r;
}

}  // namespace polya
