#include "doctest.h"

#include "conslaw/cli.hpp"
#include "conslaw/jetring.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using nlohmann::ordered_json;
using namespace conslaw;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve-vd emits deterministic JSON") {
  RunResult a = run({"solve-vd", "-d", "3", "-m", "fuu=b*f"});
  RunResult b = run({"solve-vd", "-d", "3", "-m", "fuu=b*f"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);  // byte-identical across runs
  CHECK(a.err.find("[conslaw]") != std::string::npos);
  ordered_json j = ordered_json::parse(a.out);
  CHECK(j["degree"] == 3);
  CHECK(j["dim"] == 1);
  REQUIRE(j["generators"].size() == 1);
  const auto& terms = j["generators"][0]["terms"];
  REQUIRE(terms.size() == 2);
  CHECK(terms[0]["m"] == ordered_json({{"u2", 1}}));
  CHECK(terms[1]["c"] == ordered_json({"-1/2", "0"}));
}

TEST_CASE("solve-vd reports empty kernels and honors --text") {
  RunResult even = run({"solve-vd", "-d", "2", "-m", "fuu=b*f"});
  CHECK(even.code == 0);
  ordered_json j = ordered_json::parse(even.out);
  CHECK(j["dim"] == 0);
  CHECK(j["generators"].empty());

  // under the generic model the odd kernel collapses too
  RunResult generic = run({"solve-vd", "-d", "3"});
  CHECK(generic.code == 0);
  CHECK(ordered_json::parse(generic.out)["dim"] == 0);

  RunResult text = run({"solve-vd", "-d", "3", "-m", "fuu=b*f", "--text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("u2 - (1/2)*b*u0^3") != std::string::npos);
}

TEST_CASE("build-law closes and rejects empty kernels") {
  RunResult r = run({"build-law", "-d", "3", "-m", "fuu=b*f"});
  REQUIRE(r.code == 0);
  ordered_json j = ordered_json::parse(r.out);
  CHECK(j["degree"] == 3);
  CHECK(j["closure_residual_is_zero"] == true);
  REQUIRE(j["B"].contains("1,2"));
  CHECK(j["B"]["1,2"]["terms"][0]["c"] == ordered_json({"0", "1"}));  // i

  RunResult none = run({"build-law", "-d", "2", "-m", "fuu=b*f"});
  CHECK(none.code == 1);
}

TEST_CASE("ps-chain verifies its own identities") {
  RunResult r = run({"ps-chain", "-n", "3"});
  REQUIRE(r.code == 0);
  ordered_json j = ordered_json::parse(r.out);
  CHECK(j["identities_ok"] == true);
  REQUIRE(j["entries"].size() == 3);
  CHECK(j["entries"][0]["degree"] == 1);
  CHECK(j["entries"][2]["degree"] == 5);
  CHECK(j["entries"][0].contains("phi"));
  CHECK_FALSE(j["entries"][2].contains("phi"));  // last entry has no verified phi
}

TEST_CASE("classify lists rank-drop conditions with witnesses") {
  RunResult r = run({"classify", "-d", "3"});
  REQUIRE(r.code == 0);
  ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j["conditions"].size() == 1);
  CHECK(j["conditions"][0]["condition"]["terms"][0]["m"] == ordered_json({{"l1", 1}}));
  // the witness is the surviving generator
  std::string w = j["conditions"][0]["witness"].dump();
  CHECK(w.find("u2") != std::string::npos);

  CHECK(run({"classify", "-d", "2"}).code == 2);  // even degree is a usage error
}

TEST_CASE("symmetry-check distinguishes solutions from non-solutions") {
  RunResult ok = run({"symmetry-check", "-g", "u0"});
  REQUIRE(ok.code == 0);
  ordered_json j = ordered_json::parse(ok.out);
  CHECK(j["is_solution"] == true);
  for (const auto& res : j["residuals"]) CHECK(res["zero"] == true);
  CHECK(j["noether"] == "normal-form");

  RunResult bad = run({"symmetry-check", "-g", "u1"});
  CHECK(bad.code == 1);
  ordered_json jb = ordered_json::parse(bad.out);
  CHECK(jb["is_solution"] == false);
  CHECK(jb["residuals"][0]["zero"] == false);
  CHECK(jb["noether"] == "none");
}

TEST_CASE("numcheck reports convergence orders") {
  RunResult r = run({"numcheck", "--degrees", "1", "--hs", "0.02,0.01"});
  REQUIRE(r.code == 0);
  ordered_json j = ordered_json::parse(r.out);
  CHECK(j["potential"] == "sinh");
  REQUIRE(j["laws"].size() == 1);
  CHECK(j["laws"][0]["order_ok"] == true);
  CHECK(j["energy"]["orders"].size() == 1);
}

TEST_CASE("verify runs the bounded suite deterministically") {
  std::vector<std::string> args = {"verify", "--max-degree", "3", "--skip-numeric"};
  RunResult a = run(args);
  RunResult b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  ordered_json j = ordered_json::parse(a.out);
  CHECK(j["max_degree"] == 3);
  CHECK(j["numeric_included"] == false);
  CHECK(j["all_passed"] == true);
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("render round-trips through the grammar") {
  RunResult text = run({"render", "-e", "u2 - 1/2*b*u0^3", "--text"});
  CHECK(text.code == 0);
  CHECK(text.out == "u2 - (1/2)*b*u0^3\n");

  RunResult latex = run({"render", "-e", "ub3", "--latex"});
  CHECK(latex.code == 0);
  CHECK(latex.out == "\\bar{u}_{3}\n");

  RunResult json = run({"render", "-e", "i*u0"});
  CHECK(json.code == 0);
  ordered_json j = ordered_json::parse(json.out);
  CHECK(j["terms"][0]["c"] == ordered_json({"0", "1"}));
}

TEST_CASE("--out writes the payload to a file") {
  const std::string path = "cli_out_test.json";
  RunResult r = run({"render", "-e", "u0", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());  // payload went to the file, not stdout
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  ordered_json j = ordered_json::parse(buf.str());
  CHECK(j["terms"][0]["m"] == ordered_json({{"u0", 1}}));
  f.close();
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({}).code == 2);                       // a verb is required
  CHECK(run({"frobnicate"}).code == 2);           // unknown verb
  CHECK(run({"solve-vd"}).code == 2);             // missing required option
  CHECK(run({"solve-vd", "-d", "3", "--latex", "--text"}).code == 2);
  RunResult bad_model = run({"solve-vd", "-d", "3", "-m", "fuu=u0*f"});
  CHECK(bad_model.code == 2);
  CHECK(bad_model.err.find("usage error") != std::string::npos);
  CHECK(run({"--help"}).code == 0);  // help is not an error
}

TEST_CASE("model mini-language") {
  CHECK(parse_model_text("generic").is_generic());
  CHECK(parse_model_text("").is_generic());

  PotentialModel sinh_like = parse_model_text("fuu=b*f");
  CHECK(reduce(parse_expr("F2"), sinh_like) == parse_expr("b*f"));

  PotentialModel tz = parse_model_text("fuu=-1*fu+2*f");
  CHECK(reduce(parse_expr("F2"), tz) == parse_expr("2*f - fu"));

  PotentialModel half = parse_model_text("fuu=(1/2)*f");
  CHECK(reduce(parse_expr("F2"), half) == parse_expr("1/2*f"));

  // whitespace is insignificant
  CHECK_FALSE(parse_model_text(" fuu = b * f ").is_generic());

  CHECK_THROWS_AS(parse_model_text("foo"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model_text("fuu=u0*f"), std::invalid_argument);  // jet coefficient
  CHECK_THROWS_AS(parse_model_text("fuu=b"), std::invalid_argument);     // missing '*f'
}
