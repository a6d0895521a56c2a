#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubewalk/cli.hpp"
#include "cubewalk/io.hpp"
#include "cubewalk/whitney.hpp"

using namespace cubewalk;
namespace fs = std::filesystem;

namespace {

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"cubewalk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path tmp_dir() {
  fs::path d = fs::temp_directory_path() / "cubewalk-cli-tests";
  fs::create_directories(d);
  return d;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = tmp_dir() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSquare = R"({"type": "box", "lower": [-0.4, -0.4], "upper": [0.4, 0.4]})";

}  // namespace

TEST_CASE("decompose emits one record per cube plus a summary") {
  fs::path body = write_file("square.json", kSquare);
  fs::path out = tmp_dir() / "dec.jsonl";
  CHECK(run({"decompose", "--body", body.string(), "--p", "inf", "--depth",
             "4", "--output", out.string()}) == 0);

  std::ifstream in(out);
  std::string line, last;
  long records = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
    ++records;
  }
  nlohmann::json summary = nlohmann::json::parse(last);

  WhitneyContext ctx =
      WhitneyContext::make(load_body(body.string()), LpExponent::infinity());
  Enumeration en = enumerate_cubes(ctx, 4);
  CHECK(records == static_cast<long>(en.complete.size()) + 1);
  CHECK(summary["cube_count"].get<long>() ==
        static_cast<long>(en.complete.size()));
  CHECK(summary["total_volume"].get<double>() ==
        doctest::Approx(en.complete_volume()).epsilon(1e-15));
  CHECK(summary["config"]["depth"] == "4");
}

TEST_CASE("sample with zero steps echoes the start point") {
  fs::path body = write_file("square.json", kSquare);
  fs::path out = tmp_dir() / "zero.csv";
  CHECK(run({"sample", "--body", body.string(), "--walk", "chr", "--steps",
             "0", "--start", "point:0.125,-0.25", "--seed", "9", "--output",
             out.string()}) == 0);
  std::ifstream in(out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == "0.125,-0.25");
}

TEST_CASE("sampling replays byte for byte under the same seed") {
  fs::path body = write_file("square.json", kSquare);
  fs::path a = tmp_dir() / "a.csv";
  fs::path b = tmp_dir() / "b.csv";
  fs::path c = tmp_dir() / "c.csv";
  for (const auto& [out, seed] :
       {std::pair{a, "42"}, std::pair{b, "42"}, std::pair{c, "43"}}) {
    CHECK(run({"sample", "--body", body.string(), "--walk", "mp", "--p", "inf",
               "--steps", "500", "--stride", "10", "--seed", seed, "--output",
               out.string()}) == 0);
  }
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("uniformity report carries the test verdict and config") {
  fs::path body = write_file("square.json", kSquare);
  fs::path out = tmp_dir() / "uni.json";
  CHECK(run({"uniformity", "--body", body.string(), "--steps", "20000",
             "--burnin", "2000", "--stride", "10", "--grid", "3", "--seed",
             "5", "--output", out.string()}) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["samples"].get<long>() == 2000);
  CHECK(j["bins"].get<int>() == 9);
  CHECK(j["p_value"].get<double>() > 0.001);
  CHECK(j["config"]["grid"] == "3");
}

TEST_CASE("finite balance report certifies reversibility") {
  fs::path body = write_file("square.json", kSquare);
  fs::path out = tmp_dir() / "fin.json";
  CHECK(run({"finite", "--body", body.string(), "--p", "inf", "--depth", "4",
             "--volume", "0.64", "--report", "balance", "--output",
             out.string()}) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["states"].get<int>() == 53);
  CHECK(j["row_sum_max_err"].get<double>() < 1e-12);
  CHECK(j["detailed_balance_max_err"].get<double>() < 1e-12);
  CHECK(j["stationarity_max_err"].get<double>() < 1e-10);
}

TEST_CASE("finite halfcube report needs no body file") {
  fs::path out = tmp_dir() / "half.json";
  CHECK(run({"finite", "--report", "halfcube", "--n", "2", "--p", "inf",
             "--depth", "5", "--output", out.string()}) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["pi_s"].get<double>() == 0.5);
  CHECK(j["phi"].get<double>() > 0.0);
}

TEST_CASE("mixcurve writes a csv with decreasing tv") {
  fs::path body = write_file("square.json", kSquare);
  fs::path out = tmp_dir() / "mix.csv";
  CHECK(run({"mixcurve", "--body", body.string(), "--walk", "mp", "--p", "inf",
             "--depth", "4", "--volume", "0.64", "--replicas", "400",
             "--checkpoints", "0,400", "--seed", "3", "--output",
             out.string()}) == 0);
  std::ifstream in(out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "step,tv,stderr");
  double tv0 = std::stod(rows[1].substr(rows[1].find(',') + 1));
  double tv1 = std::stod(rows[2].substr(rows[2].find(',') + 1));
  CHECK(tv1 < tv0);
}

TEST_CASE("malformed bodies exit with code 3 and name the field") {
  fs::path bad = write_file("bad.json", R"({"type": "box", "lower": [0, 0]})");
  CHECK(run({"decompose", "--body", bad.string()}) == 3);

  fs::path ragged =
      write_file("ragged.json", R"({"A": [[1, 0], [0]], "b": [1, 1],
                                    "interior_point": [0, 0]})");
  CHECK(run({"decompose", "--body", ragged.string()}) == 3);

  fs::path nojson = write_file("nojson.json", "not json at all");
  CHECK(run({"decompose", "--body", nojson.string()}) == 3);

  CHECK(run({"decompose", "--body", (tmp_dir() / "missing.json").string()}) ==
        3);
}

TEST_CASE("usage errors exit with code 2") {
  fs::path body = write_file("square.json", kSquare);
  CHECK(run({"decompose"}) == 2);  // missing --body
  CHECK(run({"sample", "--body", body.string(), "--walk", "bogus"}) == 2);
  CHECK(run({"sample", "--body", body.string(), "--start", "nowhere"}) == 2);
  CHECK(run({"sample", "--body", body.string(), "--start", "point:1"}) == 2);
  CHECK(run({}) == 2);  // subcommand required
}
