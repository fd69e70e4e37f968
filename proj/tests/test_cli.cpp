#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = toricdiff::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = "cli_test_" + name + ".json";
  std::ofstream(path) << text;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("verify-iso on projective space and the blow-up") {
  const auto r = run({"verify-iso", "--catalog", "pn-blowup", "--n", "2", "--m", "0"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "pass  ideal"));
  CHECK(r.out.substr(r.out.size() - 5) == "pass\n");
}

TEST_CASE("class-group") {
  const auto r = run({"class-group", "--catalog", "projective", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "class group: Z\n");
  const auto j = run({"class-group", "--catalog", "blowup", "--n", "3", "--json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["group"] == "Z");
}

TEST_CASE("cohomology") {
  const auto r = run({"cohomology", "--n", "2", "--r", "2", "--ell", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "dim H^1 = 3"));
  CHECK(contains(r.out, "primitive classes: Q1^-2*Q2^-1\n"));
  const auto j = run({"cohomology", "--n", "2", "--r", "2", "--ell", "1", "--json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out).is_object());
}

TEST_CASE("other subcommands") {
  CHECK(run({"fan-validate", "--catalog", "blowup", "--n", "2"}).code == 0);
  const auto cat = run({"fan-catalog", "--catalog", "zr-plus", "--n", "3", "--r", "2"});
  CHECK(cat.code == 0);
  CHECK(contains(cat.out, "\"cones\": [[2, 3, 4], [1, 3, 4]]"));
  const auto refl = run({"reflect", "--catalog", "projective", "--n", "2", "--I", "1,2"});
  CHECK(refl.code == 0);
  CHECK(contains(refl.out, "(-1,-1)"));
  const auto phi = run({"phi", "--catalog", "pn-blowup", "--n", "2", "--divisor", "0,0,1"});
  CHECK(phi.code == 0);
  CHECK(contains(phi.out, "= (-1,-1,1)"));
  CHECK(run({"sections", "--n", "2", "--r", "2", "--m", "0", "--bound", "2"}).code == 0);
  const auto prim = run({"primitives", "--n", "2", "--r", "1", "--m", "-2"});
  CHECK(prim.code == 0);
  CHECK(contains(prim.out, ": Q1^2\n"));
  CHECK(run({"highest-weight", "--n", "3", "--r", "3", "--ell", "-1"}).code == 0);
  CHECK(run({"sl-check", "--n", "2", "--r", "1", "--ell", "0"}).code == 0);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"verify-iso", "--catalog", "pn-zr-plus", "--n", "3", "--r", "2", "--ell", "1", "--json"},
      {"cohomology", "--n", "3", "--r", "2", "--ell", "2"},
      {"sl-check", "--n", "3", "--r", "2", "--ell", "-1", "--json"},
  };
  for (const auto& c : commands) {
    const auto a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("fan files") {
  const auto good = temp_file("good", R"({"rank": 2, "generators": [[1,0],[0,1],[1,1]], "cones": [[1,3],[2,3]], "divisor": [0,0,2]})");
  const auto r = run({"class-group", "--fan", good});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "[2]"));

  const auto overlap = temp_file("overlap", R"({"rank": 2, "generators": [[1,0],[0,1],[1,1]], "cones": [[1,2],[1,3]]})");
  const auto v = run({"fan-validate", "--fan", overlap});
  CHECK(v.code == 1);
  CHECK(contains(v.out, "{1,2} and {1,3}"));

  const auto unknown = temp_file("unknown", R"({"rank": 2, "generators": [[1,0]], "cones": [[1]], "colour": 2})");
  const auto u = run({"fan-validate", "--fan", unknown});
  CHECK(u.code == 2);
  CHECK(contains(u.err, "colour"));

  const auto bad_rank = temp_file("rank", R"({"rank": 0, "generators": [], "cones": []})");
  const auto br = run({"fan-validate", "--fan", bad_rank});
  CHECK(br.code == 2);
  CHECK(contains(br.err, "rank"));

  CHECK(run({"fan-validate", "--fan", "cli_test_missing.json"}).code == 2);
  for (const auto* p : {&good, &overlap, &unknown, &bad_rank}) std::remove(p->c_str());
}

TEST_CASE("malformed input") {
  const auto flag = run({"fan-validate", "--bogus"});
  CHECK(flag.code == 2);
  CHECK(contains(flag.err, "--bogus"));
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto range = run({"sections", "--n", "2", "--r", "9", "--m", "0"});
  CHECK(range.code == 2);
  CHECK(contains(range.err, "--r"));
  const auto div = run({"phi", "--catalog", "pn-blowup", "--n", "2", "--divisor", "0,x,1"});
  CHECK(div.code == 2);
  CHECK(contains(div.err, "--divisor"));
  const auto len = run({"phi", "--catalog", "pn-blowup", "--n", "2", "--divisor", "0,1"});
  CHECK(len.code == 2);
  CHECK(contains(len.err, "--divisor"));
}

TEST_CASE("report-all") {
  const auto r = run({"report-all", "--json"});
  const auto doc = nlohmann::json::parse(r.out);
  bool all = true;
  for (const auto& c : doc["criteria"]) all = all && c["passed"].get<bool>();
  CHECK(doc["criteria"].size() == 7);
  CHECK(r.code == (all ? 0 : 1));
}
