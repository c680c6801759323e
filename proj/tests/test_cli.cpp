#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "hvlab/serialize.hpp"

using namespace hvlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "hvlab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

Json without_runtime(Json j) {
  j.erase("runtime");
  return j;
}

}  // namespace

TEST_CASE("verify identities exits 0") {
  const auto r = run({"verify", "identities", "--q", "2"});
  CHECK(r.code == 0);
  const auto j = r.json();
  CHECK(j["command"] == "verify");
  CHECK(j["result"]["ok"] == true);
  CHECK(run({"verify", "bounds", "--q", "2"}).code == 0);
}

TEST_CASE("construct then count") {
  const auto path = scratch("cubic.json").string();
  const auto c = run({"construct", "edoukou", "--q", "7", "--d", "3", "--out", path});
  REQUIRE(c.code == 0);
  CHECK(c.out.empty());
  const auto r = run({"count", "--q", "7", "--in", path});
  CHECK(r.code == 0);
  CHECK(r.json()["result"]["count"] == 50912);
  // The polynomial alone works too.
  std::ifstream in(path);
  const Json doc = Json::parse(in);
  const auto poly_path = scratch("poly.json").string();
  std::ofstream(poly_path) << doc["result"]["poly"].dump();
  CHECK(run({"count", "--in", poly_path}).json()["result"]["count"] == 50912);
  // A q that does not match the file is rejected.
  CHECK(run({"count", "--q", "3", "--in", path}).code == 2);
}

TEST_CASE("malformed input is a usage error") {
  const auto path = scratch("malformed.json").string();
  std::ofstream(path) << "{\"field\": {\"p\": 2, \"k\": 2}, \"nvars\": 5";
  CHECK(run({"count", "--q", "2", "--in", path}).code == 2);
  std::ofstream(path) << "{\"field\": {\"p\": 2, \"k\": 2}, \"nvars\": 5, \"degree\": 1, \"terms\": [{\"exps\": [2,0,0,0,0], \"coeff\": 1}]}";
  CHECK(run({"count", "--q", "2", "--in", path}).code == 2);
  CHECK(run({"count", "--q", "2", "--in", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"construct", "edoukou", "--q", "6", "--d", "2"}).code == 2);
  CHECK(run({"construct", "edoukou", "--d", "2"}).code == 2);
  CHECK(run({"construct", "edoukou", "--q", "2", "--d", "5"}).code == 2);
  CHECK(run({"construct", "quadric", "--q", "2"}).code == 2);
  CHECK(run({"sample", "--q", "2"}).code == 2);
  CHECK(run({"construct", "sorensen", "--q", "2", "--d", "1"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("construct") != std::string::npos);
}

TEST_CASE("construct reports") {
  const std::vector<std::pair<std::vector<std::string>, int>> cases = {
      {{"construct", "edoukou", "--q", "2", "--d", "2"}, 81},
      {{"construct", "sorensen", "--q", "3", "--d", "3"}, 103},
      {{"construct", "degenerate", "--q", "3", "--d", "2"}, 73},
      {{"construct", "quadric", "--q", "2", "--kind", "II"}, 77},
      {{"construct", "serre", "--q", "2", "--d", "3", "--m", "4"}, 213},
  };
  for (const auto& [args, n] : cases) {
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["result"]["count"] == n);
    CHECK(j["result"]["certificate"]["claimed_count"] == n);
    CHECK(j["config"]["q"] == std::stoi(args[3]));
  }
}

TEST_CASE("classify") {
  CHECK(run({"classify", "line", "--q", "2", "--index", "5"}).json()["result"]["classification"]["class"] == "Secant");
  const auto hyp = run({"classify", "hyperplane", "--q", "2", "--index", "0"}).json();
  CHECK(hyp["result"]["classification"]["count"] == 45);
  CHECK(run({"classify", "plane", "--q", "2", "--index", "99999"}).code == 2);

  // A flat file, and a quadric built by construct.
  const auto flat = scratch("flat.json").string();
  std::ofstream(flat) << R"({"field": {"p": 2, "k": 2}, "flat": {"m": 4, "dim": 1, "basis": [[1,1,0,0,0],[0,0,1,1,0]]}})";
  const auto l = run({"classify", "line", "--in", flat});
  REQUIRE(l.code == 0);
  CHECK(l.json()["result"]["classification"]["class"] == "Generator");
  CHECK(run({"classify", "plane", "--in", flat}).code == 2);

  const auto quad = scratch("quadric.json").string();
  REQUIRE(run({"construct", "quadric", "--q", "2", "--kind", "III", "--out", quad}).code == 0);
  CHECK(run({"classify", "quadric", "--in", quad}).json()["result"]["type"] == "TypeIII");

  const auto cubic = scratch("cubic3.json").string();
  std::ofstream(cubic) << R"({"field": {"p": 2, "k": 2}, "nvars": 3, "degree": 3, "terms": [{"exps": [3,0,0], "coeff": 1}, {"exps": [0,3,0], "coeff": 1}, {"exps": [0,0,3], "coeff": 1}]})";
  const auto pc = run({"classify", "plane-cubic", "--in", cubic}).json();
  CHECK(pc["result"]["class"] == "AbsolutelyIrreducible");
  CHECK(pc["result"]["rational_points"] == 9);
}

TEST_CASE("audit command") {
  const auto path = scratch("e33.json").string();
  REQUIRE(run({"construct", "edoukou", "--q", "3", "--d", "3", "--out", path}).code == 0);
  const auto r = run({"audit", "--in", path, "--double-count"});
  CHECK(r.code == 0);
  const auto j = r.json()["result"];
  CHECK(j["intersection_count"] == 784);
  CHECK(j["conjecture"]["bound"] == 784);
  CHECK(j["double_count"]["ok"] == true);
  CHECK(j["predicates"]["contains_hyperplane"] == "true");
}

TEST_CASE("sample command and determinism") {
  const std::vector<std::string> args{"sample", "--q", "2", "--d", "2", "--n", "300", "--seed", "42"};
  auto a = args, b = args;
  a.insert(a.end(), {"--threads", "1"});
  b.insert(b.end(), {"--threads", "3"});
  const auto ra = run(a), rb = run(b);
  CHECK(ra.code == 0);
  CHECK(without_runtime(ra.json()).dump() == without_runtime(rb.json()).dump());
  CHECK(ra.json()["result"]["max_count"] <= 81);

  // Rerunning the embedded configuration reproduces the report.
  const auto cfg = ra.json()["config"];
  std::vector<std::string> replay{cfg["command"], "--q", std::to_string(cfg["q"].get<int>()), "--d",
                                  std::to_string(cfg["d"].get<int>()), "--n", std::to_string(cfg["samples"].get<int>()),
                                  "--seed", std::to_string(cfg["seed"].get<int>())};
  CHECK(without_runtime(run(replay).json()).dump() == without_runtime(ra.json()).dump());
}

TEST_CASE("table format") {
  const auto r = run({"construct", "serre", "--q", "2", "--d", "2", "--m", "2", "--format", "table"});
  CHECK(r.code == 0);
  CHECK(r.out.find("result.count\t9") != std::string::npos);
}
