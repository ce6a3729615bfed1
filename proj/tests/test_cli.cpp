#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "doctest.h"
#include "isotree/graph_io.h"
#include "isotree/isoradial.h"
#include "json.hpp"

using namespace isotree;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("isotree_test_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate") {
  SUBCASE("cycle 4 round trips through the graph reader") {
    const Run r = run({"generate", "cycle", "4"});
    REQUIRE(r.code == 0);
    const GraphFile g = graph_from_json(json::parse(r.out));
    CHECK(g.map.num_vertices() == 4);
    const IsoradialData iso = validate_isoradial(g.map, g.coords);
    for (double t : iso.theta) CHECK(t == doctest::Approx(std::acos(-1.0) / 4));
  }
  SUBCASE("grid 3 3") {
    const Run r = run({"generate", "grid", "3", "3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["vertices"].size() == 9);
    CHECK(j["darts"].size() == 24);
  }
  SUBCASE("cycle 2 is rejected") {
    const Run r = run({"generate", "cycle", "2"});
    CHECK(r.code == 2);
    CHECK(json::parse(r.err)["error"] == "BadParams");
  }
  SUBCASE("unknown generator") {
    const Run r = run({"generate", "torus", "3"});
    CHECK(r.code == 2);
    CHECK(json::parse(r.err)["error"] == "UnknownGenerator");
  }
}

TEST_CASE("verify") {
  SUBCASE("C4 passes") {
    const Run r = run({"verify", "--generator", "cycle 4"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["checks"].size() >= 10);
    for (const json& c : j["checks"]) CHECK(c["pass"] == true);
  }
  SUBCASE("tiny tolerance fails and lists the failures") {
    const Run r = run({"verify", "--generator", "grid 3 3", "--tolerance", "1e-18"});
    CHECK(r.code == 1);
    CHECK(r.err.find("FAIL") != std::string::npos);
    const json j = json::parse(r.out);
    bool some_fail = false;
    for (const json& c : j["checks"]) some_fail = some_fail || c["pass"] == false;
    CHECK(some_fail);
  }
  SUBCASE("non-isoradial input") {
    const Run g = run({"generate", "cycle", "4"});
    json j = json::parse(g.out);
    j["vertices"][0]["x"] = 1.7;
    const std::string path = temp_path("bad.json");
    std::ofstream(path) << j.dump();
    const Run r = run({"verify", "--input", path});
    CHECK(r.code == 2);
    CHECK(json::parse(r.err)["error"] == "NotIsoradial");
    std::filesystem::remove(path);
  }
  SUBCASE("file input and output") {
    const std::string in = temp_path("c3.json"), out = temp_path("c3_report.json");
    REQUIRE(run({"generate", "cycle", "3", "--out", in}).code == 0);
    CHECK(run({"verify", "--input", in, "--out", out, "--root-s", "1"}).code == 0);
    std::ifstream f(out);
    const json j = json::parse(f);
    CHECK(j.contains("checks"));
    std::filesystem::remove(in);
    std::filesystem::remove(out);
  }
  SUBCASE("non-positive tolerance") {
    CHECK(run({"verify", "--generator", "cycle 4", "--tolerance", "0"}).code == 2);
  }
}

TEST_CASE("export") {
  SUBCASE("quadri_tiling of C4 as DOT has 16 nodes") {
    const Run r = run({"export", "quadri_tiling", "--generator", "cycle 4", "--format", "dot"});
    REQUIRE(r.code == 0);
    int nodes = 0;
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);)
      if (line.find("->") == std::string::npos && line.find("--") == std::string::npos &&
          line.find('[') != std::string::npos && line.find("node [") == std::string::npos &&
          line.find("graph [") == std::string::npos)
        ++nodes;
    CHECK(nodes == 16);
  }
  SUBCASE("deterministic") {
    for (const std::string what : {"primal", "dual", "quad", "quadri_tiling", "extended_double", "G0", "G"})
      for (const std::string fmt : {"dot", "json"}) {
        const Run a = run({"export", what, "--generator", "grid 3 2", "--format", fmt});
        const Run b = run({"export", what, "--generator", "grid 3 2", "--format", fmt});
        CAPTURE(what);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
      }
  }
  SUBCASE("extended double carries class tags") {
    const Run r = run({"export", "extended_double", "--generator", "cycle 4", "--format", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    std::map<std::string, int> tags;
    for (const json& v : j["vertices"]) ++tags[v["tag"].get<std::string>()];
    int total = 0;
    for (const auto& [t, n] : tags) total += n;
    CHECK(total == 4 + 5 + 8);
    CHECK(tags.size() >= 3);
  }
  SUBCASE("unknown target") {
    const Run r = run({"export", "torus", "--generator", "cycle 4"});
    CHECK(r.code == 2);
    CHECK(json::parse(r.err)["error"] == "UnknownTarget");
  }
}

}  // TEST_SUITE
