#include "support.hpp"

#include "polya/contour.hpp"
#include "polya/errors.hpp"

#include <json.hpp>

#include <map>
#include <random>

using namespace polya;
using namespace polya::test;

namespace {
using boost::multiprecision::exp;

Real root2() { return boost::multiprecision::sqrt(Real(2)); }

// Shared 50-digit identity reports; each run costs a few seconds.
const IdentityReport& report50(int n) {
  static std::map<int, IdentityReport> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const PrecisionContext ctx;
    PrecisionScope scope(ctx);
    it = cache.emplace(n, ContourVerifier(ctx).verify_identity(n, full_catalog())).first;
  }
  return it->second;
}
}  // namespace

TEST_CASE("contour parameters") {
  const PrecisionContext ctx;
  PrecisionScope scope(ctx);
  const ContourSpec p = ContourSpec::preset(2, ctx);
  CHECK(dist(p.b, R("-3.75")) == 0);
  CHECK(dist(p.a, pi_value()) == 0);
  CHECK(dist(p.c, Real(1)) == 0);
  CHECK_FALSE(p.finite());
  CHECK(dist(ContourSpec::from_delta(R("2.5"), ctx).b, ContourSpec::preset(2, ctx).b) == 0);
  CHECK_THROWS_AS(ContourSpec::preset(-1, ctx), DomainError);

  ContourSpec bad = p;
  bad.b = Real(-4);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.b = Real(1);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.d = Real(1);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.X = Real(-1);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.c = Real(0);
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("kernel g") {
  const PrecisionContext ctx;
  PrecisionScope scope(ctx);
  const ContourSpec spec = ContourSpec::preset(1, ctx);
  CHECK(log_dist(g_kernel(Complex(spec.b), spec), Complex(0, 1)) < -60);
  const Complex z(R("0.3"), R("-0.7"));
  CHECK(log_dist(g_kernel(z + Real(2), spec), g_kernel(z, spec)) < -60);
  const Real t(R("2.5"));
  CHECK(log_dist(g_kernel(Complex(spec.b, t), spec), Complex(0, exp(-spec.a * t))) < -60);
  CHECK(log_dist(normalization_factor() * (Real(2) * root2() * pi_value()), Complex(-1, -1)) < -60);
}

TEST_CASE("residue terms") {
  const PrecisionContext ctx;
  PrecisionScope scope(ctx);
  const Real pi = pi_value();
  SUBCASE("trivial zeros sum to pi sqrt2 (n - 1)(-1 + i)") {
    for (int n = 1; n <= 6; ++n) {
      const ContourSpec spec = ContourSpec::preset(n, ctx);
      Complex sum;
      for (int k = 1; k < n; ++k) sum += residue_term(Singularity::trivial(k), spec);
      CHECK(log_dist(sum, Complex(-1, 1) * (pi * root2() * (n - 1))) < -60);
      CHECK_THROWS_AS(residue_term(Singularity::trivial(n), spec), ContourError);
    }
  }
  SUBCASE("pole term") {
    const ContourSpec spec = ContourSpec::preset(0, ctx);
    const Complex pole = residue_term(Singularity::pole(), spec);
    CHECK(log_dist(pole, Complex(0, -2) * pi * g_kernel(Complex(1), spec)) < -60);
    CHECK(log_dist(pole, Complex(-1, 1) * (root2() * pi)) < -60);
    CHECK(log_dist(normalization_factor() * pole, Complex(1)) < -60);
  }
  SUBCASE("residue sums") {
    const ResidueSum one = rhs_residue_sum(ContourSpec::preset(1, ctx), ZeroCatalog{}, {}, ctx);
    CHECK(one.trivial_count == 0);
    CHECK(log_dist(one.total, one.pole) < -60);
    const ResidueSum three = rhs_residue_sum(ContourSpec::preset(3, ctx), ZeroCatalog{}, {}, ctx);
    CHECK(three.trivial_count == 2);
    CHECK(log_dist(three.trivial, Complex(-1, 1) * (2 * pi * root2())) < -60);
    const ResidueSum full = rhs_residue_sum(ContourSpec::preset(0, ctx), full_catalog(), {}, ctx);
    const double mag = abs(full.nontrivial).convert_to<double>();
    CHECK(mag == doctest::Approx(2 * 3.14159265358979 * 5.18699e-20).epsilon(1e-4));
    CHECK(full.tail_bound < R("1e-300"));
  }
  SUBCASE("conjugate zeros only count when enclosed") {
    ContourSpec spec = ContourSpec::preset(0, ctx);
    const ZeroEntry e{R("0.5"), 1, Real(1) / 2};  // t below c: its conjugate sits inside too
    CHECK(encloses(spec, Complex(e.sigma, e.t)));
    CHECK(encloses(spec, Complex(e.sigma, -e.t)));
    CHECK_FALSE(encloses(spec, Complex(e.sigma, R("-1.5"))));
  }
}

TEST_CASE("closed-rectangle oracle") {
  const PrecisionContext ctx;
  PrecisionScope scope(ctx);
  const ContourVerifier v(ctx);
  const Real pi = pi_value();
  const Complex two_pi_i(0, 2 * pi);
  SUBCASE("box around the pole") {
    const ContourSpec k = ContourSpec::preset(0, ctx);
    const Complex got = v.rectangle_oracle(Rectangle::around(Complex(1), R("0.3")), k);
    CHECK(abs(got + two_pi_i * g_kernel(Complex(1), k)) < R("1e-25"));
  }
  SUBCASE("box around -2 with the n = 3 kernel") {
    const ContourSpec k = ContourSpec::preset(3, ctx);
    const Complex got = v.rectangle_oracle(Rectangle::around(Complex(-2), R("0.3")), k);
    CHECK(abs(got - two_pi_i * g_kernel(Complex(-2), k)) < R("1e-25"));
  }
  SUBCASE("singularity-free box") {
    const ContourSpec k = ContourSpec::preset(0, ctx);
    const Rectangle box{R("-1.5"), R("0.5"), R("0.5"), R("3")};
    CHECK(abs(v.rectangle_oracle(box, k, &full_catalog())) < R("1e-25"));
  }
  SUBCASE("edge proximity is rejected") {
    const ContourSpec k = ContourSpec::preset(0, ctx);
    const Rectangle box{R("0.9995"), R("1.5"), R("-0.5"), R("0.5")};
    CHECK_THROWS_AS(v.rectangle_oracle(box, k), ContourError);
  }
}

TEST_CASE("random rectangles against enclosed residues") {
  const auto ctx = PrecisionContext::with_digits(35);
  PrecisionScope scope(ctx);
  const ContourVerifier v(ctx);
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> x0(-7.0, 0.0), w(0.6, 4.0), y0(-2.0, 12.0), h(0.5, 14.0);
  int done = 0;
  while (done < 5) {
    const Rectangle box{R(std::to_string(x0(rng)).c_str()), Real(0), R(std::to_string(y0(rng)).c_str()), Real(0)};
    Rectangle b = box;
    b.x1 = b.x0 + Real(w(rng));
    b.y1 = b.y0 + Real(h(rng));
    const ContourSpec k = ContourSpec::preset(done, ctx);
    Complex got;
    try {
      got = v.rectangle_oracle(b, k, &full_catalog());
    } catch (const ContourError&) {
      continue;  // a singularity sits on the boundary; draw again
    }
    CHECK(abs(got - v.enclosed_residues(b, k, full_catalog())) < R("1e-20"));
    ++done;
  }
}

TEST_CASE("semi-infinite edges: path independence and a finite rectangle") {
  const auto ctx = PrecisionContext::with_digits(40);
  PrecisionScope scope(ctx);
  const ContourVerifier v(ctx);
  const Complex base = v.lhs_edges(ContourSpec::preset(0, Real(1), ctx));
  for (const char* c : {"0.5", "1.5"}) {
    CHECK(abs(v.lhs_edges(ContourSpec::preset(0, R(c), ctx)) - base) < R("1e-25"));
  }
  ContourSpec finite = ContourSpec::preset(0, ctx);
  finite.d = Real(6);
  finite.X = Real(30);
  const Complex closed = v.rectangle_oracle(finite, &full_catalog());
  // zeros above Im = 30 contribute about e^{-30 pi}
  CHECK(abs(closed - base) < R("1e-20"));
  const ResidueSum inside = rhs_residue_sum(finite, full_catalog(), {}, ctx);
  CHECK(abs(closed - inside.total) < R("1e-20"));
}

TEST_CASE("identity at n = 0 and the report schema") {
  const IdentityReport& r = report50(0);
  const PrecisionContext ctx;
  PrecisionScope scope(ctx);
  CHECK(r.abs_error < R("1e-25"));
  CHECK(r.recomputed_error() == r.abs_error);
  // the pole gives +1 once normalized, and there are no trivial zeros to the right of b_0
  const Real sigma = sigma_rh(full_catalog(), pi_value(), ctx).value;
  CHECK(abs(r.rhs - Complex(Real(1), sigma)) < R("1e-40"));
  CHECK_FALSE(r.paper_variant_match);

  const auto j = nlohmann::json::parse(to_json(r));
  for (const char* key : {"n", "precision_digits", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_error",
                          "trunc_T", "trunc_Y", "paper_variant_delta_re", "paper_variant_delta_im",
                          "paper_variant_match", "elapsed_ms"}) {
    CHECK_MESSAGE(j.contains(key), key);
  }
  CHECK(j.size() == 13);
  CHECK(dist(parse_real(j["lhs_re"].get<std::string>()), r.lhs.re) < 1e-49);
  CHECK_FALSE(nlohmann::json::parse(to_json(r, false)).contains("elapsed_ms"));
}

TEST_CASE("residue side across modes and the offset") {
  const IdentityReport& r1 = report50(1);
  const PrecisionContext ctx;
  PrecisionScope scope(ctx);
  const ContourVerifier v(ctx);
  const Real sigma = sigma_rh(full_catalog(), pi_value(), ctx).value;
  CHECK(r1.abs_error < R("1e-25"));
  for (int n = 0; n <= 5; ++n) {
    const ResidueSum s = rhs_residue_sum(ContourSpec::preset(n, ctx), full_catalog(), {}, ctx);
    const Complex normalized = normalization_factor() * s.total;
    CHECK(abs(normalized - Complex(Real(std::max(n, 1)), sigma)) < R("1e-45"));
  }
  const Complex omega = v.omega_offset(full_catalog());
  CHECK(abs(omega - Complex(Real(-1) / 2, sigma)) < R("1e-45"));
  CHECK(abs(v.omega_at(3, full_catalog()) - omega) < R("1e-45"));
  // mode 0 sees the pole without the trivial-zero count that offsets it for n >= 1
  CHECK(abs(v.omega_at(0, full_catalog()) - omega - Complex(1)) < R("1e-45"));
  CHECK(abs(v.omega_offset(ZeroCatalog{}) - Complex(Real(-1) / 2)) < R("1e-45"));
}

TEST_CASE("printed coefficient adjudication") {
  std::vector<IdentityReport> reports{report50(0), report50(1)};
  const PrecisionContext ctx;
  PrecisionScope scope(ctx);
  const ContourVerifier v(ctx);
  const Adjudication a = v.adjudicate(full_catalog(), reports);
  CHECK_FALSE(a.checks[0].match);
  CHECK(abs(a.checks[0].derived - Complex(-1, -1)) < R("1e-20"));
  CHECK_FALSE(a.checks[1].match);
  CHECK(abs(a.checks[1].derived - Complex(-1, 1) * (root2() * pi_value())) < R("1e-25"));
  CHECK_FALSE(a.checks[2].match);
  CHECK(a.consistent_matching_sets == 1);
  CHECK(a.sets[0].self_consistent);
  CHECK(a.sets[0].matches);
  for (int mask = 1; mask < 8; ++mask) CHECK_FALSE(a.sets[mask].matches);
}
