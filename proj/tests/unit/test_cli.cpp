#include "support.hpp"

#include "polya/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace polya;
using namespace polya::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "polya");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("polya_cli_" + name);
}

const std::string zeros = data_path("zeros_100.txt");

}  // namespace

TEST_CASE("zeta subcommand") {
  const Run r = run({"zeta", "--s", "2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("1.6449340668482264364724151666460251892189499012068") != std::string::npos);
  CHECK(run({"zeta", "--s", "0.5,14", "--method", "reflect", "--prec", "30"}).code == kExitInputError);
  CHECK(run({"zeta", "--s", "-0.5,14", "--method", "reflect", "--prec", "30"}).code == kExitOk);
  CHECK(run({"zeta", "--s", "1"}).code == kExitInputError);
  CHECK(run({"zeta", "--s", "abc"}).code == kExitInputError);
  CHECK(run({"zeta", "--s", "2", "--method", "nope"}).code == kExitInputError);
}

TEST_CASE("precision resolution") {
  CHECK(run({"zeta", "--s", "2", "--prec", "10"}).code == kExitInputError);
  setenv("POLYA_PREC", "abc", 1);
  CHECK(run({"zeta", "--s", "2"}).code == kExitInputError);
  CHECK(run({"zeta", "--s", "2", "--prec", "25"}).code == kExitOk);  // the flag wins
  setenv("POLYA_PREC", "22", 1);
  const Run r = run({"zeta", "--s", "2"});
  CHECK(r.out.find("1.6449340668482264364724e+00") != std::string::npos);
  unsetenv("POLYA_PREC");
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"verify"}).code == kExitInputError);
  CHECK(run({"verify", "--n", "-1"}).code == kExitInputError);
  CHECK(run({"verify", "--n", "x"}).code == kExitInputError);
  CHECK(run({"verify", "--n", "0", "--zeros", "/nonexistent.txt"}).code == kExitInputError);
  CHECK(run({"operator", "--dim", "0", "--zeros", zeros}).code == kExitInputError);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("sigma subcommand") {
  const Run plain = run({"sigma", "--zeros", zeros});
  CHECK(plain.code == kExitOk);
  CHECK(plain.out.find("INDISTINGUISHABLE") != std::string::npos);
  const auto json_path = scratch("sigma.json");
  const Run pert = run({"sigma", "--zeros", zeros, "--perturb", "14.134725:0.25", "--json", json_path.string()});
  CHECK(pert.code == kExitOk);
  CHECK(pert.out.find("VIOLATION_DETECTED") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(json_path));
  CHECK(j["verdict"] == "VIOLATION_DETECTED");
  CHECK(run({"sigma", "--zeros", zeros, "--perturb", "14.134725:0.7"}).code == kExitInputError);
  CHECK(run({"sigma", "--zeros", zeros, "--perturb", "14.134725"}).code == kExitInputError);
  CHECK(run({"sigma"}).code == kExitInputError);
}

TEST_CASE("verify subcommand: exit code, JSON round trip and determinism") {
  const auto a = scratch("verify_a.json");
  const auto b = scratch("verify_b.json");
  const Run r = run({"verify", "--n", "1", "--zeros", zeros, "--prec", "25", "--json", a.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("abs_error") != std::string::npos);
  CHECK(run({"verify", "--n", "1", "--zeros", zeros, "--prec", "25", "--json", b.string()}).code == kExitOk);
  auto ja = nlohmann::json::parse(slurp(a));
  auto jb = nlohmann::json::parse(slurp(b));
  CHECK(ja.size() == 13);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  CHECK(ja.dump() == jb.dump());

  PrecisionScope scope(PrecisionContext::with_digits(25));
  const Real lhs_re = parse_real(ja["lhs_re"].get<std::string>());
  const Real rhs_re = parse_real(ja["rhs_re"].get<std::string>());
  CHECK(dist(lhs_re, rhs_re) < 1e-12);
  CHECK(dist(rhs_re, Real(1)) < 1e-20);
  CHECK(ja["n"] == 1);
  CHECK(ja["precision_digits"] == 25);
}

TEST_CASE("operator subcommand") {
  const auto csv = scratch("op.csv");
  const Run r = run({"operator", "--dim", "2", "--zeros", zeros, "--prec", "25", "--csv", csv.string()});
  // the mode-0 entry sits one unit above 1/2, so the spectral check fails
  CHECK(r.code == kExitVerificationFailed);
  const std::string text = slurp(csv);
  CHECK(text.rfind("n,h_re,h_im,target,abs_dev\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(r.out.find("spectrum_deviation over n >= 1") != std::string::npos);
}

TEST_CASE("taylor, oracle and scan subcommands") {
  const auto j = scratch("taylor.json");
  const Run t = run({"taylor", "--kappa", "1.25", "--order", "12", "--prec", "25", "--json", j.string()});
  CHECK(t.code == kExitOk);
  const auto tj = nlohmann::json::parse(slurp(j));
  CHECK(tj["coeffs"].size() == 13);
  CHECK(run({"taylor", "--kappa", "1", "--order", "12", "--prec", "25"}).code == kExitInputError);

  CHECK(run({"oracle", "--b", "0.25", "--around", "pole", "--prec", "30"}).code == kExitOk);
  CHECK(run({"oracle", "--b", "-5.75", "--around", "trivial:1", "--prec", "30"}).code == kExitOk);
  CHECK(run({"oracle", "--b", "0.25", "--around", "moon", "--prec", "30"}).code == kExitInputError);
  CHECK(run({"oracle", "--b", "0.25", "--d", "3", "--x", "10", "--prec", "30", "--zeros", zeros}).code == kExitOk);
  CHECK(run({"oracle", "--b", "0.25", "--prec", "30"}).code == kExitInputError);

  const auto sc = scratch("scan.csv");
  const Run s = run({"scan", "--min", "1.45", "--max", "1.55", "--step", "0.05", "--zeros", zeros, "--prec",
                     "20", "--csv", sc.string()});
  CHECK(s.code == kExitOk);
  CHECK(s.out.find("minima (1)") != std::string::npos);
  CHECK(slurp(sc).rfind("delta,residual\n", 0) == 0);
  CHECK(run({"scan", "--max", "3.1", "--step", "0.5", "--zeros", zeros}).code == kExitInputError);
}
