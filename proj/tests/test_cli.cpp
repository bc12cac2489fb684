#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "lac/cli.hpp"
#include "lac/model.hpp"
#include "support/support.hpp"

using namespace lac;
using namespace lac::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::execute(args, out, err);
  return {code, out.str(), err.str()};
}

Run on(const std::string& fixture, std::vector<std::string> rest) {
  std::vector<std::string> args{"--model", fixture_path(fixture)};
  args.insert(args.end(), rest.begin(), rest.end());
  return run(std::move(args));
}

}  // namespace

TEST_CASE("golden outputs") {
  const struct {
    const char* fixture;
    std::vector<std::string> args;
    const char* golden;
    int code;
  } cases[] = {
      {"tangent_r2.model", {"check"}, "check_tangent_r2.txt", cli::kOk},
      {"nonpoisson_r3.model", {"poisson-check"}, "poisson_check_nonpoisson_r3.txt", cli::kVerificationFailed},
      {"tangent_r3.model", {"schouten", "P", "Q"}, "schouten_tangent_r3.txt", cli::kOk},
      {"so3.model", {"dual"}, "dual_so3.txt", cli::kOk},
  };
  for (const auto& c : cases) {
    CAPTURE(c.golden);
    const Run first = on(c.fixture, c.args);
    CHECK(first.code == c.code);
    CHECK(first.out == read_file(golden_path(c.golden)));
    CHECK(on(c.fixture, c.args).out == first.out);
  }
}

TEST_CASE("every command runs on the fixtures") {
  const struct {
    const char* fixture;
    std::vector<std::string> args;
    const char* expected;
  } cases[] = {
      {"tangent_r2.model", {"bracket", "V", "W"}, "[multivector result]\n2 = \"1\"\n"},
      {"tangent_r2.model", {"d", "x1*x2"}, "[form result]\n1 = \"x2\"\n2 = \"x1\"\n"},
      {"tangent_r2.model", {"lie", "V", "eta"}, "[form result]\n1,2 = \"1\"\n"},
      {"tangent_r2.model", {"interior", "V", "eta"}, "[form result]\n2 = \"x1\"\n"},
      {"tangent_r2.model", {"pair", "eta", "Lambda"}, "result = \"x1\"\n"},
      {"tangent_r2.model", {"wedge", "V", "W"}, "[multivector result]\n1,2 = \"x1\"\n"},
      {"tangent_r2.model", {"lie", "Lambda", "eta"}, "[form result]\n1 = \"1\"\n"},
      {"symplectic_r2.model", {"poisson-check"}, "poisson: PASS\n"},
      {"symplectic_r2.model", {"sharp", "b"}, "[multivector result]\n1 = \"-x2^2\"\n2 = \"x1\"\n"},
      {"symplectic_r2.model", {"lichnerowicz", "P"}, "[multivector result]\n1 = \"x1\"\n2 = \"-x2\"\n"},
      {"so3_poisson.model", {"koszul", "a", "b"}, "[form result]\n3 = \"1\"\n"},
      {"so3_poisson.model", {"lichnerowicz", "P"}, "[multivector result]\n"},
      {"so3.model", {"dual-verify"}, "poisson: PASS\nhomogeneity: PASS\ntranspose-anchor: PASS\n"},
      {"tangent_r2.model",
       {"reconstruct"},
       "[algebroid]\nbase = [ \"x1\", \"x2\" ]\nrank = 2\nanchor[1][1] = \"1\"\nanchor[2][2] = \"1\"\nreconstruct: PASS\n"},
      {"symplectic_r2.model",
       {"cotangent"},
       "[algebroid]\nbase = [ \"x1\", \"x2\" ]\nrank = 2\nanchor[1][2] = \"1\"\nanchor[2][1] = \"-1\"\n"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.args.front());
    const Run r = on(c.fixture, c.args);
    CHECK(r.code == cli::kOk);
    CHECK(r.out == c.expected);
    CHECK(r.err.empty());
  }
}

TEST_CASE("cotangent output reloads as the cotangent algebroid") {
  const Run r = on("so3_poisson.model", {"cotangent"});
  REQUIRE(r.code == cli::kOk);
  const ModelFile m = parse_model(r.out);
  REQUIRE(m.algebroid);
  CHECK(*m.algebroid == cotangent_algebroid(so3_poisson()));
}

TEST_CASE("JSON output") {
  const Run r = on("tangent_r3.model", {"--json", "schouten", "P", "Q"});
  REQUIRE(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "schouten");
  CHECK(j["result"]["variance"] == "multivector");
  CHECK(j["result"]["components"]["1"]["2"] == "-x3^2");
  CHECK(j["result"]["components"]["3"]["1,2,3"] == "-1/2*x3^2");

  const Run bad = on("nonpoisson_r3.model", {"--json", "poisson-check"});
  CHECK(bad.code == cli::kVerificationFailed);
  const auto b = nlohmann::json::parse(bad.out);
  CHECK(b["passed"] == false);
  CHECK(b["residual"]["components"]["3"]["1,2,3"] == "2");
  CHECK(b["jacobi_defects"]["x1,x2,x3"] == "-1");

  const auto d = nlohmann::json::parse(on("so3.model", {"--json", "--fiber-prefix", "p", "dual"}).out);
  CHECK(d["poisson"]["base"] == nlohmann::json::array({"p1", "p2", "p3"}));
  CHECK(d["poisson"]["L"]["1,2"] == "p3");
}

TEST_CASE("exit codes") {
  CHECK(on("bad_jacobi.model", {"check"}).code == cli::kVerificationFailed);
  CHECK(on("bad_jacobi.model", {"check"}).out.find("jacobi(1,2,3): 2 = \"1\"") != std::string::npos);
  CHECK(on("bad_jacobi.model", {"dual"}).code == cli::kVerificationFailed);
  CHECK(on("bad_jacobi.model", {"dual-verify"}).code == cli::kVerificationFailed);
  CHECK(on("bad_jacobi.model", {"--force", "dual-verify"}).code == cli::kVerificationFailed);
  CHECK(on("bad_jacobi.model", {"--force", "dual"}).code == cli::kOk);
  CHECK(on("nonpoisson_r3.model", {"cotangent"}).code == cli::kVerificationFailed);
  CHECK(on("nonpoisson_r3.model", {"--force", "cotangent"}).code == cli::kOk);

  CHECK(on("so3.model", {"frobnicate"}).code == cli::kUsageError);
  CHECK(on("tangent_r2.model", {"bracket", "V"}).code == cli::kUsageError);
  CHECK(on("tangent_r2.model", {"pair", "V", "W"}).code == cli::kUsageError);
  CHECK(on("tangent_r2.model", {"d", "x1 +"}).code == cli::kUsageError);
  CHECK(on("tangent_r2.model", {"d", "y"}).code == cli::kUsageError);
  CHECK(on("tangent_r2.model", {"poisson-check"}).code == cli::kUsageError);
  CHECK(on("symplectic_r2.model", {"check"}).code == cli::kUsageError);
  CHECK(on("absent.model", {"check"}).code == cli::kUsageError);
  CHECK(run({"check"}).code == cli::kUsageError);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(on("so3_poisson.model", {"sharp", "Lambda"}).err.find("'Lambda'") != std::string::npos);
}

TEST_CASE("verification commands never pass with a nonzero residual") {
  for (const char* fixture : {"tangent_r2.model", "tangent_r3.model", "so3.model", "heisenberg.model",
                              "bad_jacobi.model"}) {
    CAPTURE(fixture);
    const ModelFile m = load_model(fixture_path(fixture));
    const bool axioms = verify_axioms(*m.algebroid).passed;
    CHECK((on(fixture, {"check"}).code == cli::kOk) == axioms);
    CHECK((on(fixture, {"reconstruct"}).code == cli::kOk) == axioms);
    CHECK((on(fixture, {"dual-verify"}).code == cli::kOk) == axioms);
  }
  for (const char* fixture : {"symplectic_r2.model", "linear_r3.model", "so3_poisson.model",
                              "nonpoisson_r3.model"}) {
    CAPTURE(fixture);
    const ModelFile m = load_model(fixture_path(fixture));
    const bool poisson = is_poisson(m.poisson->chart(), m.poisson->bivector()).passed;
    CHECK((on(fixture, {"poisson-check"}).code == cli::kOk) == poisson);
  }
}
