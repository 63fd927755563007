#include "doctest.h"
#include "substar/report.hpp"

#include <fstream>

using namespace substar;

TEST_CASE("classification documents") {
  RunConfig cfg;
  const auto p = classify_json(parse_substitution("a -> ab\nb -> ab"), cfg);
  CHECK(p["primitive"]["value"] == true);
  CHECK(p["proper"]["first"] == "a");
  CHECK(p["proper"]["last"] == "b");
  CHECK(p["periodicity"]["kind"] == "periodic");
  CHECK(p["periodicity"]["period"] == 2);
  CHECK(p["periodicity"]["power"] == 2);
  CHECK(p["para_periodic"]["N"] == 2);
  const auto a = classify_json(parse_substitution("a -> aab\nb -> ab"), cfg);
  CHECK(a["periodicity"]["kind"] == "aperiodic");
  CHECK(a["para_periodic"]["value"] == false);
}

TEST_CASE("config bounds") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.depth = 7;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.stages = 2;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.format = "yaml";
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("reports are deterministic and seed dependent") {
  const auto s = parse_substitution("a -> abab\nb -> ab");
  RunConfig cfg;
  cfg.samples = 60;
  const auto one = report_json(s, cfg).dump();
  CHECK(one == report_json(s, cfg).dump());
  cfg.seed = 2;
  CHECK(one != report_json(s, cfg).dump());
}

TEST_CASE("non-proper input keeps the decidable sections") {
  const auto s = parse_substitution("a -> ab\nb -> ba");
  RunConfig cfg;
  const auto r = report_json(s, cfg);
  CHECK(r["classification"]["proper"]["value"] == false);
  CHECK(r["relations"]["applicable"] == false);
  CHECK(r["kms"]["reason"] == "not applicable (not proper)");
  CHECK(r["kgroups"].contains("K0"));
  CHECK_THROWS_AS(relations_json(s, cfg), Error);
}

TEST_CASE("text rendering") {
  Json doc{{"a", 1}, {"b", {{"kind", "exact"}, {"value", "1/2"}}}, {"c", Json::array({Json{{"x", true}}})}};
  CHECK(render_text(doc) == "a: 1\nb: 1/2 (exact)\nc:\n  - x: yes\n");
}

TEST_CASE("golden ab/ab report carries the known values") {
  std::ifstream in(std::string(SUBSTAR_SOURCE_DIR) + "/data/golden/ab_ab.report.json");
  REQUIRE(in);
  const auto g = Json::parse(in);
  CHECK(g["pass"] == true);
  CHECK(g["classification"]["periodicity"]["period"] == 2);
  CHECK(g["classification"]["para_periodic"]["N"] == 2);
  CHECK(g["kgroups"]["K0"] == "Z");
  CHECK(g["kgroups"]["K1"] == "Z");
  CHECK(g["kgroups"]["F"]["K0"] == "Z[1/2]");
  CHECK(g["measures"]["lambda"]["value"] == "2");
  for (const auto& c : g["measures"]["cylinders"]) {
    const auto level = std::stoi(c["vertex"].get<std::string>().substr(2));
    CHECK(c["measure"]["value"] == "1/" + std::to_string(1 << level));
  }
  CHECK(g["dynamics"]["odometer"]["base"] == "(2,2,2,...)");
  CHECK(g["kms"]["failures"] == 0);
  CHECK(g["relations"]["failures"] == 0);
}
