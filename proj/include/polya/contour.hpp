#pragma once

#include "polya/contour_spec.hpp"
#include "polya/precision.hpp"
#include "polya/quadrature.hpp"
#include "polya/zeros.hpp"
#include "polya/zeta.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace polya {

/// g(z) = i e^{ia(z-b)}
Complex g_kernel(const Complex& z, const ContourSpec& spec);

/// (-1-i) / (2 sqrt(2) pi): the factor that turns the a = pi identity into its normalized form.
Complex normalization_factor();

enum class SingularityKind { nontrivial_zero, trivial_zero, pole };

/// A singularity of zeta'/zeta with its residue (multiplicity l for zeros, -1 for the pole).
struct Singularity {
  SingularityKind kind;
  Complex location;
  int residue;

  static Singularity pole();
  static Singularity trivial(int k);  // the zero at -2k
  static Singularity zero(const ZeroEntry& entry, bool conjugate = false);
};

/// Whether z lies strictly inside the (possibly semi-infinite) contour.
bool encloses(const ContourSpec& spec, const Complex& z);

/// 2 pi i * residue * g(location); throws ContourError when the singularity is not enclosed.
Complex residue_term(const Singularity& s, const ContourSpec& spec);

struct ResidueSum {
  Complex nontrivial;
  Complex trivial;
  Complex pole;
  Complex total;
  int trivial_count = 0;
  Real tail_bound;  // bound on |contribution| of zeros above the last catalog ordinate
};

/// All residue terms enclosed by the semi-infinite contour (or the finite one, if d and X are set).
ResidueSum rhs_residue_sum(const ContourSpec& spec, const ZeroCatalog& catalog,
                           const std::vector<Perturbation>& perturbations,
                           const PrecisionContext& ctx);

struct IdentityReport {
  int n = 0;
  int precision_digits = 0;
  Complex lhs;  // normalized
  Complex rhs;  // normalized
  Real abs_error;
  TruncationPlan truncation;
  Complex paper_variant_delta;
  bool paper_variant_match = false;
  double elapsed_ms = 0;

  // Diagnostics beyond the serialized schema.
  Complex lhs_vertical;    // raw edge values
  Complex lhs_horizontal;
  Real error_budget;       // quadrature estimates + truncation bounds, normalized
  Real sigma_pi;

  /// |lhs - rhs| recomputed from the stored fields.
  Real recomputed_error() const;
};

/// The tolerance the identity is judged against: 10^-(digits/2).
Real identity_tolerance(const PrecisionContext& ctx);

/// Tolerance for comparing printed coefficients with derived ones.
inline constexpr double kVariantTolerance = 1e-10;

struct PrintedValueCheck {
  std::string name;
  std::string printed_text;
  Complex printed;
  Complex derived;
  bool match = false;
};

/// One combination of printed/derived choices for the three printed quantities.
struct VariantSet {
  bool printed_nontrivial = false;
  bool printed_pole = false;
  bool printed_offset = false;
  bool self_consistent = false;  // offset equals what the two coefficients imply
  Real max_error;                // worst |lhs(n) - rhs_set(n)| over the supplied reports
  bool matches = false;
};

struct Adjudication {
  std::array<PrintedValueCheck, 3> checks;
  std::array<VariantSet, 8> sets;
  int consistent_matching_sets = 0;
};

/// Assembles both sides of the contour identity.
///
/// Holds one zeta engine and one edge integrator, so repeated runs at the same
/// precision share the precision-dependent tables.
class ContourVerifier {
 public:
  explicit ContourVerifier(const PrecisionContext& ctx);

  const PrecisionContext& context() const { return engine_.context(); }
  const ZetaEngine& engine() const { return engine_; }
  const EdgeQuadrature& edges() const { return edges_; }

  /// Vertical plus horizontal edge (counterclockwise), un-normalized.
  Complex lhs_edges(const ContourSpec& spec) const;

  /// Closed-contour integral of zeta'/zeta * g over `box`, counterclockwise.
  /// `catalog`, when given, is used to refuse boxes passing within 1e-3 of a zero.
  Complex rectangle_oracle(const Rectangle& box, const ContourSpec& kernel,
                           const ZeroCatalog* catalog = nullptr) const;
  Complex rectangle_oracle(const ContourSpec& finite_spec, const ZeroCatalog* catalog = nullptr) const;

  /// 2 pi i * sum of residue terms enclosed by `box`.
  Complex enclosed_residues(const Rectangle& box, const ContourSpec& kernel,
                            const ZeroCatalog& catalog) const;

  IdentityReport verify_identity(int n, const ZeroCatalog& catalog) const;
  IdentityReport verify_identity(int n, const ZeroCatalog& catalog, const Real& c) const;

  /// Normalized residue side at the preset n minus (n + 1/2).
  Complex omega_at(int n, const ZeroCatalog& catalog,
                   const std::vector<Perturbation>& perturbations = {}) const;

  /// omega at `reference`, checked against every mode in `check_modes`.
  Complex omega_offset(const ZeroCatalog& catalog,
                       const std::vector<Perturbation>& perturbations = {}, int reference = 1,
                       const std::vector<int>& check_modes = {1, 2, 3, 4}) const;

  /// Compares the printed coefficients with oracle-derived ones and tests all eight
  /// printed/derived combinations against the supplied identity reports.
  Adjudication adjudicate(const ZeroCatalog& catalog, const std::vector<IdentityReport>& reports) const;

 private:
  ZetaEngine engine_;
  EdgeQuadrature edges_;
  AdaptiveIntegrator integrator_;
};

// Free-function forms.
Complex lhs_edges(const ContourSpec& spec, const PrecisionContext& ctx);
Complex rectangle_oracle(const ContourSpec& finite_spec, const PrecisionContext& ctx);
IdentityReport verify_identity(int n, const ZeroCatalog& catalog, const PrecisionContext& ctx);
Complex omega_offset(const ZeroCatalog& catalog, const PrecisionContext& ctx);

/// JSON object with the report schema; high-precision values as decimal strings.
std::string to_json(const IdentityReport& report, bool include_timing = true);

}  // namespace polya
