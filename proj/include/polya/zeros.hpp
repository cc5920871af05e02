#pragma once

#include "polya/precision.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace polya {

/// One nontrivial zero rho = sigma + i t of multiplicity l.
struct ZeroEntry {
  Real t;
  int l = 1;
  Real sigma{0.5};
};

/// A hypothetical pair 1/2 +- chi + i t.
struct Perturbation {
  Real t;
  Real chi;

  /// Throws DomainError unless 0 <= chi < 1/2 and t > 0.
  void validate() const;
};

/// Parses "t:chi".
Perturbation parse_perturbation(const std::string& text);

class ZeroCatalog {
 public:
  ZeroCatalog() = default;
  ZeroCatalog(std::vector<ZeroEntry> entries, std::string source);

  /// Parses the catalog text format; `source` labels error messages.
  static ZeroCatalog parse(std::string_view text, const std::string& source = "<memory>");

  const std::vector<ZeroEntry>& entries() const { return entries_; }
  const std::string& source_path() const { return source_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<ZeroEntry> entries_;
  std::string source_;
};

ZeroCatalog load_zeros(const std::string& path);

/// Ordinates closer than this count as the same zero when matching perturbations.
inline constexpr double kOrdinateMatch = 1e-6;

/// Zero set after applying perturbations: a perturbation whose ordinate matches a
/// catalog entry replaces it by the pair (each member keeping the entry's multiplicity);
/// an unmatched one is injected as a new simple pair.
std::vector<ZeroEntry> effective_zeros(const ZeroCatalog& catalog,
                                       const std::vector<Perturbation>& perturbations);

struct BoundedSum {
  Real value;
  Real tail_bound;
};

/// Bound on sum l e^{-a t} over zeros above the last catalog ordinate.
Real catalog_tail_bound(const ZeroCatalog& catalog, const Real& a);

/// sum_k l_k e^{-a t_k} with the tail bound for uncataloged zeros.
BoundedSum sigma_rh(const ZeroCatalog& catalog, const Real& a, const PrecisionContext& ctx);

/// sum over the effective zero set of l e^{-a t} cos(pi (1/2 - sigma)).
Real sigma_pi(const ZeroCatalog& catalog, const std::vector<Perturbation>& perturbations,
              const Real& a, const PrecisionContext& ctx);

enum class Verdict { indistinguishable, violation_detected };
std::string_view to_string(Verdict v);

struct CriterionReport {
  Real sigma_pi;
  Real sigma_rh;
  Real difference;  // sigma_pi - sigma_rh, summed entry by entry
  Real tail_bound;
  Real resolution;  // smallest difference the working precision can separate from the sums
  Verdict verdict = Verdict::indistinguishable;
};

CriterionReport criterion_compare(const ZeroCatalog& catalog,
                                  const std::vector<Perturbation>& perturbations, const Real& a,
                                  const PrecisionContext& ctx);

}  // namespace polya
