#include "contrastlab/commands.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace contrastlab;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CONTRASTLAB_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("contrastlab_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_CASE("gen prints fractions and diagnostics") {
  const Run r = run({"gen", "repeated", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("-3/4") != std::string::npos);
  CHECK(r.out.find("centered: yes") != std::string::npos);

  const Run p = run({"gen", "polynomial", "3", "--format", "json"});
  REQUIRE(p.code == 0);
  const json j = json::parse(p.out);
  CHECK(j["matrix"][0][0].get<double>() == doctest::Approx(-0.70710678));
  CHECK(j["matrix"][1][1].get<double>() == doctest::Approx(-0.81649658));
  CHECK(j["diagnostics"]["orthogonal"].get<bool>());
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({"gen", "treatment", "1"}).code == kExitUsage);
  CHECK(run({"gen", "bogus", "3"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"fit", "/no/such/file.csv", "-m", "DV ~ F"}).code == kExitUsage);
  CHECK(run({"repro", "table99"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("invert both directions") {
  Run r = run({"invert", data("sum_hypothesis.txt"), "--intercept", "--format", "json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["columns"] == json({"cH01", "cH02"}));
  CHECK(j["matrix"][2][0].get<double>() == doctest::Approx(-1));

  r = run({"invert", data("treatment3.txt"), "--direction", "c2h", "--intercept", "--rows",
           "--format", "json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  const std::vector<double> row = j["matrix"][1];
  REQUIRE(row.size() == 3);
  CHECK(row[0] == doctest::Approx(-1));
  CHECK(row[1] == doctest::Approx(1));
  CHECK(row[2] == doctest::Approx(0));
  CHECK(j["warnings"].empty());

  r = run({"invert", data("treatment3.txt"), "--direction", "c2h"});
  CHECK(r.code == 0);
  CHECK(r.err.find("not centered") != std::string::npos);

  const std::string raw = temp_file("raw.txt", "\ta\tb\tc\nh1\t0\t1\t0\nh2\t0\t0\t1\n");
  CHECK(run({"invert", raw}).code == kExitValidation);
}

TEST_CASE("invert writes the text format") {
  const auto out = (std::filesystem::temp_directory_path() / "contrastlab_test_rep.txt").string();
  const Run r = run({"invert", data("repeated_hypothesis.txt"), "-o", out});
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str().find("-3/4") != std::string::npos);
}

TEST_CASE("check reports collinearity") {
  const std::string bad = temp_file("bad.txt", "\tc1\tc2\n1\t1\t3\n2\t2\t4\n3\t3\t5\n");
  CHECK(run({"check", bad}).code == kExitValidation);
  const Run ok = run({"check", bad, "--allow-deficient"});
  CHECK(ok.code == 0);
  CHECK(ok.err.find("dependent") != std::string::npos);
}

TEST_CASE("fit text and JSON carry the same numbers") {
  const std::vector<std::string> base{"fit", data("two_group.csv"), "-m", "DV ~ 1 + F", "-c",
                                      "F=scaled_sum"};
  const Run text = run(base);
  REQUIRE(text.code == 0);
  CHECK(text.out.find("9.49") != std::string::npos);
  CHECK(text.out.find("-3.16") != std::string::npos);
  auto jargs = base;
  jargs.insert(jargs.end(), {"--format", "json"});
  const Run js = run(jargs);
  REQUIRE(js.code == 0);
  const json j = json::parse(js.out);
  const auto& c = j["coefficients"];
  CHECK(c[0]["estimate"].get<double>() == doctest::Approx(0.6));
  CHECK(c[1]["t"].get<double>() == doctest::Approx(-3.1623).epsilon(1e-4));
  CHECK(c[1]["ci"].size() == 2);
  for (const auto& k : {"estimate", "se", "t", "p", "ci"}) CHECK(c[0].contains(k));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", c[0]["t"].get<double>());
  CHECK(text.out.find(buf) != std::string::npos);
}

TEST_CASE("fit with a contrast file and nesting") {
  const Run r = run({"fit", data("two_by_two.csv"), "-m", "DV ~ 1 + B/A", "-c",
                     data("scaled_ab.contrasts"), "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const std::vector<double> expected{20, -20, 0, 20};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::fabs(j["coefficients"][i]["estimate"].get<double>() - expected[i]) < 1e-9);
  }
}

TEST_CASE("fit honours level overrides and reports validation errors") {
  Run r = run({"fit", data("word_frequency.csv"), "-m", "DV ~ F", "--levels",
               "F=medium,low,high", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["coefficients"][1]["name"] == "Flow");

  r = run({"fit", data("word_frequency.csv"), "-m", "DV ~ 1 + * F"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("position") != std::string::npos);
  CHECK(run({"fit", data("word_frequency.csv"), "-m", "DV ~ G"}).code == kExitValidation);
}

TEST_CASE("anova, alerting and partition") {
  Run r = run({"anova", data("two_by_two.csv"), "-m", "DV ~ A*B", "-c", "A=sum,B=sum",
               "--format", "json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["rows"][0]["f"].get<double>() == doctest::Approx(5));
  CHECK(j["rows"][1]["f"].get<double>() == doctest::Approx(20));
  CHECK(j["rows"][2]["f"].get<double>() == doctest::Approx(5));

  r = run({"alerting", data("four_level.csv"), "--factor", "F", "-c", "F=polynomial"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("1600.00") != std::string::npos);
  CHECK(r.out.find("0.53") != std::string::npos);

  r = run({"partition", data("priming.csv"), "--a", "Prime", "--b", "Target", "--matrix",
           data("priming_apriori.txt"), "--format", "json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["rows"][3]["ss"].get<double>() == doctest::Approx(11111.11).epsilon(1e-6));
  CHECK(j["rows"][4]["ss"].get<double>() == doctest::Approx(2777.78).epsilon(1e-6));
  CHECK(j["r2_apriori"].get<double>() == doctest::Approx(0.8));
}

TEST_CASE("simulate writes CSV with the requested seed") {
  const Run a = run({"simulate", data("two_group.sim"), "--seed", "5"});
  const Run b = run({"simulate", data("two_group.sim"), "--seed", "5"});
  const Run c = run({"simulate", data("two_group.sim"), "--seed", "6"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.rfind("B_A,id,DV\n", 0) == 0);

  const std::string bad = temp_file("bad.sim", "W = 3\nn = 6\nM = [1, 2, 3]\nSD = 1\nR = -0.9\n");
  CHECK(run({"simulate", bad}).code == kExitNumerical);
}

TEST_CASE("repro exit status") {
  const Run one = run({"repro", "table16"});
  CHECK(one.code == 0);
  CHECK(one.out.find("PASS table16") != std::string::npos);
  const Run all = run({"repro", "all", "--format", "json"});
  CHECK(all.code == 0);
  const json j = json::parse(all.out);
  CHECK(j["passed"] == j["total"]);
}

TEST_CASE("p formatting") {
  CHECK(format_p(0.0133) == ".013");
  CHECK(format_p(1e-7) == "< .001");
  CHECK(format_p(0.9995) == "> .999");
  CHECK(format_p(std::nan("")) == "NA");
}
