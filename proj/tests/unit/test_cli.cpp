#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../../tools/cli.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("absg_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(std::initializer_list<std::string> args) {
  return absg::cli::dispatch(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("keystream json report is reproducible byte for byte") {
  TempDir tmp;
  auto out1 = tmp.file("a.json");
  auto out2 = tmp.file("b.json");
  CHECK(run({"keystream", "--source", "iid", "--seed", "11", "--length", "200", "--out", out1}) == 0);
  CHECK(run({"keystream", "--source", "iid", "--seed", "11", "--length", "200", "--out", out2}) == 0);
  CHECK(slurp(out1) == slurp(out2));

  json j = json::parse(slurp(out1));
  CHECK(j["version"] == absg::cli::kVersion);
  CHECK(j["config"]["seed"] == 11);
  CHECK(j["x"].get<std::string>().size() == 200);
  CHECK(j["z"].get<std::string>().size() == j["q"].size());
  CHECK(j["h"].size() == j["q"].size());
}

TEST_CASE("keystream text mode writes parallel files") {
  TempDir tmp;
  auto prefix = tmp.file("ks");
  CHECK(run({"keystream", "--source", "lfsr", "--poly", "9", "--init", "1000", "--length", "30",
             "--format", "text", "--out", prefix}) == 0);
  std::string x = slurp(prefix + ".x");
  std::string q = slurp(prefix + ".q");
  CHECK(x.size() == 31);  // 30 bits + newline
  CHECK(q.find(',') != std::string::npos);
}

TEST_CASE("classes csv has the documented schema") {
  TempDir tmp;
  auto out = tmp.file("classes.csv");
  CHECK(run({"classes", "--l", "12", "--out", out}) == 0);
  std::istringstream ss(slurp(out));
  std::string line;
  std::getline(ss, line);
  CHECK(line.rfind("# absg", 0) == 0);
  std::getline(ss, line);
  CHECK(line == "B,alpha,theta,beta,cardinality,mass");
  std::getline(ss, line);
  CHECK(line == "6,0,6,0,1,1/2^6");
  std::size_t rows = 1;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 36);  // sum over B of (2B - L + 1) for L = 12
}

TEST_CASE("bound-scan emits one row per L with honest pass column") {
  TempDir tmp;
  auto out = tmp.file("scan.csv");
  CHECK(run({"bound-scan", "--mode", "exhaustive", "--l", "12:60:6", "--out", out}) == 0);
  std::istringstream ss(slurp(out));
  std::string line;
  std::getline(ss, line);  // comment
  std::getline(ss, line);
  CHECK(line == "L,c_star,exponent,theorem_bound,p1,p2,pass");
  std::size_t rows = 0, passes = 0;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    ++rows;
    if (line.find(",true") != std::string::npos) ++passes;
  }
  CHECK(rows == 9);
  CHECK(passes == 6);  // the lower-bound comparison fails at L in {48, 54, 60}
}

TEST_CASE("attack emits one json line per trial and a summary") {
  TempDir tmp;
  auto out = tmp.file("trials.jsonl");
  CHECK(run({"attack", "--strategy", "most-probable", "--l", "12", "--budget", "64", "--trials",
             "25", "--seed", "7", "--check", "oracle", "--out", out}) == 0);
  std::istringstream ss(slurp(out));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    CHECK(rec["trial"] == lines);
    CHECK(rec["budget"] == 64);
    CHECK(rec["strategy"] == "most-probable");
    CHECK(rec["queries_used"].get<std::uint64_t>() <= 64);
    if (rec["success"].get<bool>()) CHECK(rec.contains("recovered"));
    ++lines;
  }
  CHECK(lines == 25);
}

TEST_CASE("attack runs with the lfsr check against generated keystreams") {
  TempDir tmp;
  auto out = tmp.file("lfsr.jsonl");
  // degree-12 polynomial, tap mask 0x829 -> taps {1, 4, 6, 12}
  CHECK(run({"attack", "--strategy", "sorted", "--l", "12", "--budget", "512", "--trials", "6",
             "--seed", "21", "--check", "lfsr", "--poly", "829", "--out", out}) == 0);
  std::istringstream ss(slurp(out));
  std::string line;
  std::size_t lines = 0, successes = 0;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    CHECK(rec["check"] == "lfsr");
    if (rec["success"].get<bool>()) {
      ++successes;
      CHECK(rec["recovered"].get<std::string>().size() >= 12);
    }
    ++lines;
  }
  CHECK(lines == 6);
  CHECK(successes > 0);  // budget 512 covers most of the mass at L = 12

  // the polynomial degree must match --l
  CHECK(run({"attack", "--strategy", "sorted", "--l", "12", "--budget", "8", "--check", "lfsr",
             "--poly", "9"}) == 2);
  CHECK(run({"attack", "--strategy", "sorted", "--l", "12", "--budget", "8", "--check",
             "lfsr"}) == 2);  // missing --poly
}

TEST_CASE("attack trial records replay byte for byte") {
  TempDir tmp;
  auto out1 = tmp.file("a.jsonl");
  auto out2 = tmp.file("b.jsonl");
  for (const auto& out : {out1, out2})
    CHECK(run({"attack", "--strategy", "sorted", "--l", "12", "--budget", "128", "--trials",
               "10", "--seed", "99", "--out", out}) == 0);
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("keystream handles the empty stream") {
  TempDir tmp;
  auto out = tmp.file("empty.json");
  CHECK(run({"keystream", "--source", "iid", "--seed", "3", "--length", "0", "--out", out}) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["x"] == "");
  CHECK(j["z"] == "");
  CHECK(j["q"].empty());
}

TEST_CASE("reduce performs both directions") {
  TempDir tmp;
  auto zf = tmp.file("z.txt");
  auto qf = tmp.file("q.txt");
  {
    std::ofstream(zf) << "000\n";
    std::ofstream(qf) << "1,0,2\n";
  }
  auto out = tmp.file("x.json");
  CHECK(run({"reduce", "--z-file", zf, "--q-file", qf, "--out", out}) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["x"] == "101001001");
  CHECK(j["span"] == 9);

  auto xf = tmp.file("x.txt");
  std::ofstream(xf) << "101001001\n";
  auto out2 = tmp.file("gaps.json");
  CHECK(run({"reduce", "--x-file", xf, "--offset", "0", "--target", "9", "--symbol", "empty",
             "--out", out2}) == 0);
  json g = json::parse(slurp(out2));
  CHECK(g["q"] == json::array({1, 0, 2}));
  CHECK(g["span"] == 9);
  CHECK(g["out_index"] == 1);
}

TEST_CASE("validation errors exit 2 without partial execution") {
  TempDir tmp;
  auto out = tmp.file("never.csv");
  CHECK(run({"classes", "--l", "13", "--out", out}) == 2);       // odd L
  CHECK_FALSE(fs::exists(out));
  CHECK(run({"bound-scan", "--mode", "exhaustive", "--l", "14", "--out", out}) == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(run({"bound-scan", "--mode", "nonsense", "--l", "12"}) == 2);
  CHECK(run({"attack", "--strategy", "most-probable", "--l", "13", "--budget", "4"}) == 2);
  CHECK(run({"attack", "--strategy", "typical", "--l", "20", "--budget", "4"}) == 2);  // L % 3
  CHECK(run({"nonsense"}) == 2);
  CHECK(run({}) == 2);
}

TEST_CASE("output directory env var resolves relative paths") {
  TempDir tmp;
  setenv(absg::cli::kOutputDirEnv, tmp.path.c_str(), 1);
  CHECK(run({"classes", "--l", "10", "--out", "classes_env.csv"}) == 0);
  unsetenv(absg::cli::kOutputDirEnv);
  CHECK(fs::exists(tmp.path / "classes_env.csv"));
}

TEST_CASE("verify suites emit a pass/fail report") {
  TempDir tmp;
  auto out = tmp.file("verify.json");
  CHECK(run({"verify", "--suite", "markov", "--out", out}) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() == 2);
  CHECK(run({"verify", "--suite", "nonsense"}) == 2);
}
