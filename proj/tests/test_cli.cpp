#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "puiseux/io.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = puiseux::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(PUISEUX_DATA_DIR) + "/" + name; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("documented outputs") {
  const auto betti = run({"betti-set", "--monoid", data("n5_7_17_23.json")});
  CHECK(betti.code == 0);
  CHECK(betti.out == "28 30 46\n");
  CHECK(betti.err.find("17 is not an atom") != std::string::npos);

  const auto grams = run({"classify", "--monoid", data("grams.json"), "--element", "1/2", "--truncate", "6"});
  CHECK(grams.code == 0);
  CHECK(first_line(grams.out) == "Betti (isolated vertex 5(1/10); witness 14(1/28))");
  CHECK(grams.out.find("truncation: 6") != std::string::npos);

  const auto canon = run({"canon", "--monoid", data("reciprocal.json"), "--element", "5/6"});
  CHECK(canon.code == 0);
  CHECK(canon.out == "n_q=0; c[1/2]=1 c[1/3]=1\n");

  const auto geo = run({"betti-set", "--monoid", data("geometric_3_2.json"), "--bound", "5"});
  CHECK(geo.out == "3 9/2\n");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"canon", "--monoid", data("reciprocal.json")}).code == 1);
  CHECK(run({"canon", "--monoid", data("reciprocal.json"), "--element", "1/4"}).code == 4);
  CHECK(run({"classify", "--monoid", data("reciprocal.json"), "--element", "1/4"}).code == 4);
  CHECK(run({"factorizations", "--monoid", data("n5_7_17_23.json"), "--element", "11"}).code == 4);
  CHECK(run({"canon", "--monoid", data("reciprocal.json"), "--element", "1/0"}).code == 2);
  CHECK(run({"canon", "--monoid", "/nonexistent.json", "--element", "1"}).code == 2);
  CHECK(run({"factorizations", "--monoid", data("reciprocal.json"), "--element", "1/7", "--truncate", "3"})
            .code == 3);
  CHECK(run({"invariants", "--monoid", data("reciprocal.json"), "--element", "1"}).code == 3);
  CHECK(run({"verify", "--monoid", data("reciprocal.json"), "--suite", "cor43"}).code == 1);
  CHECK(run({"--help"}).code == 0);

  const auto bad = temp_path("puiseux_bad_spec.json");
  std::ofstream(bad) << R"({"kind":"finitely_generated","atoms":["5","7","17","23"]})";
  const auto rejected = run({"betti-set", "--monoid", bad});
  CHECK(rejected.code == 2);
  CHECK(rejected.err.find("not minimal") != std::string::npos);
}

TEST_CASE("JSON outputs parse with the documented shapes") {
  using nlohmann::json;
  const auto f = run({"factorizations", "--monoid", data("n5_7_17_23.json"), "--element", "46", "--json"});
  const json fz = json::parse(f.out);
  CHECK(fz["element"] == "46");
  CHECK(fz["complete"] == "exact");
  CHECK(fz["factorizations"].size() == 2);

  const auto g = run({"betti-graph", "--monoid", data("reciprocal.json"), "--element", "1", "--format", "json",
                      "--truncate", "3"});
  const json gr = json::parse(g.out);
  CHECK(gr["element"] == "1");
  CHECK(gr["vertices"] == json{"2(1/2)", "3(1/3)", "5(1/5)"});
  CHECK(gr["components"].size() == 3);

  const auto c = run({"classify", "--monoid", data("grams.json"), "--element", "3/4", "--json"});
  CHECK(json::parse(c.out)["certificate"]["kind"] == "valuation_path");

  const auto i = run({"invariants", "--monoid", data("n5_7_17_23.json"), "--element", "46", "--json"});
  CHECK(json::parse(i.out) == json{{"element", "46"}, {"lengths", {2, 8}}, {"delta", {6}}, {"catenary", 8}});

  const auto s = run({"scan", "--monoid", data("grams.json"), "--bound", "1", "--truncate", "6", "--json"});
  CHECK(json::parse(s.out)["betti"].size() == 7);
}

TEST_CASE("text reports echo the truncation") {
  const auto f = run({"factorizations", "--monoid", data("grams.json"), "--element", "1/2"});
  CHECK(f.out.find("truncation 8") != std::string::npos);
  const auto s = run({"scan", "--monoid", data("prop44_3.json"), "--bound", "4", "--truncate", "12"});
  CHECK(s.out.find("truncation: 12") != std::string::npos);
  CHECK(s.out.find("betti: 1 2 3\n") != std::string::npos);
}

TEST_CASE("DOT export honours NO_COLOR") {
  const std::vector<std::string> args = {"betti-graph", "--monoid", data("n5_7_17_23.json"), "--element", "46"};
  unsetenv("NO_COLOR");
  CHECK(run(args).out.find("fillcolor") != std::string::npos);
  setenv("NO_COLOR", "1", 1);
  const auto plain = run(args).out;
  unsetenv("NO_COLOR");
  CHECK(plain.find("fillcolor") == std::string::npos);
  CHECK(plain.find("v0 -- ") == std::string::npos);  // 46 has no edges
}

TEST_CASE("identical invocations give identical output") {
  const std::vector<std::string> args = {"scan", "--monoid", data("grams.json"), "--bound", "1", "--json"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("constructed specs re-validate and reproduce results") {
  const auto path = temp_path("puiseux_prop44_2.json");
  CHECK(run({"construct", "--family", "prop44", "--b", "2", "-o", path}).code == 0);
  const auto scan = run({"scan", "--monoid", path, "--bound", "3", "--truncate", "8"});
  CHECK(scan.code == 0);
  CHECK(scan.out.find("betti: 1 2\n") != std::string::npos);

  for (const char* family : {"grams", "reciprocal", "geometric"}) {
    const auto p = temp_path("puiseux_family.json");
    REQUIRE(run({"construct", "--family", family, "-o", p}).code == 0);
    CHECK_NOTHROW(puiseux::Monoid{puiseux::load_spec(p)});
  }
  CHECK(run({"construct", "--family", "geometric", "--q", "2"}).code == 2);
}

TEST_CASE("verify suites") {
  CHECK(run({"verify", "--monoid", data("grams.json"), "--suite", "thm42", "--truncate", "6"}).code == 0);
  CHECK(run({"verify", "--monoid", data("grams.json"), "--suite", "cor43", "--truncate", "6"}).code == 0);
  CHECK(run({"verify", "--monoid", data("n5_7_17_23.json"), "--suite", "prop21"}).code == 0);
  const auto lemma = run({"verify", "--monoid", data("reciprocal.json"), "--suite", "lemma41", "--truncate", "4",
                          "--samples", "50"});
  CHECK(lemma.code == 0);
  CHECK(lemma.out.find("suite lemma41: PASS") != std::string::npos);
  CHECK(run({"verify", "--monoid", data("n5_7_17_23.json"), "--suite", "thm42"}).code == 2);
}
