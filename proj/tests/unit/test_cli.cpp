#include "chord/cli.hpp"
#include "chord/table.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace chord;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("census rnk row") {
  const Invocation r = invoke({"census", "rnk", "--n", "7"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "n,k1,k2,k3,k4,k5,k6,k7");
  CHECK(ls[1] == "7,720,3024,2616,980,195,21,1");
}

TEST_CASE("census tables have headers") {
  CHECK(lines(invoke({"census", "nqb", "--n", "2"}).out) ==
        std::vector<std::string>{"q,b0,b1", "1,0,2", "2,0,0", "3,0,0", "4,1,0"});
  CHECK(lines(invoke({"census", "short", "--n", "3"}).out).front() == "k,diagrams");
  CHECK(lines(invoke({"census", "bubsize", "--n", "3"}).out)[1] == "1,8");
  const auto cnkq = lines(invoke({"census", "cnkq", "--n", "2"}).out);
  CHECK(cnkq.front() == "n,k,q,count");
  CHECK(std::find(cnkq.begin(), cnkq.end(), "2,1,1,2") != cnkq.end());
  CHECK(std::find(cnkq.begin(), cnkq.end(), "2,2,0,3") != cnkq.end());
}

TEST_CASE("spectra emits 55 verified certificates") {
  const Invocation r = invoke({"spectra", "--k-min", "2", "--k-max", "12"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 56);
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(ls[i].find(",true,") != std::string::npos);
}

TEST_CASE("crystal and asympt subcommands") {
  CHECK(lines(invoke({"crystal", "rnk", "--n", "6", "--k", "3"}).out)[1] == "6,3,296");
  CHECK(lines(invoke({"crystal", "rnk", "--n", "7", "--k", "4", "--scalable"}).out)[1] == "7,4,980");
  CHECK(lines(invoke({"crystal", "cnkq", "--n", "2", "--k", "1", "--q", "1"}).out)[1] == "2,1,1,2");
  CHECK(lines(invoke({"crystal", "moments", "--n", "3"}).out)[1].find("11/6") != std::string::npos);
  CHECK(invoke({"asympt", "bridges", "--n", "100", "--q", "100"}).code == 0);
  CHECK(invoke({"asympt", "kmoments", "--n", "250"}).code == 0);
  CHECK(invoke({"asympt", "rnk", "--n", "20"}).code == 0);
  CHECK(invoke({"asympt", "model", "--n", "5", "--q", "3"}).code == 0);
  CHECK(invoke({"asympt", "cnkq", "--n", "50", "--k", "5", "--q", "10"}).code == 0);
}

TEST_CASE("big integers are written in full") {
  const auto ls = lines(invoke({"crystal", "rnk", "--n", "40", "--k", "1", "--scalable"}).out);
  CHECK(ls[1] == "40,1,20397882081197443358640281739902897356800000000");
}

TEST_CASE("figure series") {
  const auto bm = lines(invoke({"figure", "bridge-moments", "--n", "10", "--samples", "20000", "--seed", "1"}).out);
  CHECK(bm.front().rfind("q,mcMean,mcSE,eqBbar,mcVar,eqVar", 0) == 0);
  CHECK(bm.size() == 21);
  CHECK(lines(invoke({"figure", "kmean", "--n-min", "4", "--n-max", "6"}).out).size() == 4);
  const auto rs = lines(invoke({"figure", "rs", "--n", "60", "--k-max", "20"}).out);
  CHECK(rs.front() == "k,R,exactNorm,asymptNorm,normalNorm");
  CHECK(rs.size() == 21);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"census"}).code == cli::kUsage);
  CHECK(invoke({"census", "bogus", "--n", "3"}).code == cli::kUsage);
  CHECK(invoke({"census", "rnk", "--n", "abc"}).code == cli::kUsage);
  CHECK(invoke({"crystal", "rnk", "--n", "3", "--k", "5"}).code == cli::kUsage);
  CHECK(invoke({"asympt", "cnkq", "--n", "10", "--k", "5"}).code == cli::kUsage);
  CHECK(invoke({"census", "rnk", "--n", "11"}).code == cli::kCapacity);
  CHECK(invoke({"crystal", "moments", "--n", "700"}).code == cli::kCapacity);
  CHECK(invoke({"simulate", "--n", "10", "--trials", "20", "--max-steps", "1"}).code == cli::kTimeout);
  CHECK(invoke({"simulate", "--n", "10", "--trials", "20", "--max-steps", "1", "--max-timeouts", "20"}).code == cli::kOk);
  CHECK(invoke({"--help"}).code == cli::kOk);
  CHECK(invoke({"selftest"}).code == cli::kOk);
}

TEST_CASE("json layout") {
  const Invocation r = invoke({"--format", "json", "census", "rnk", "--n", "5"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["subcommand"] == "census rnk");
  CHECK(doc["meta"]["toolVersion"] == cli::kToolVersion);
  CHECK(doc["meta"]["config"]["n"] == "5");
  REQUIRE(doc["data"].size() == 1);
  CHECK(doc["data"][0]["k2"] == "62");
  CHECK(doc["data"][0]["n"] == 5);

  const auto sim = nlohmann::json::parse(invoke({"simulate", "--n", "6", "--trials", "100", "--format", "json"}).out);
  CHECK(sim["meta"]["summary"]["trials"] == 100);
  CHECK(sim["data"].size() == 7);
}

TEST_CASE("output is byte-identical across thread counts") {
  const std::vector<std::vector<std::string>> commands = {
      {"census", "cnkq", "--n", "7"},
      {"crystal", "rnk", "--n", "9"},
      {"figure", "bridge-moments", "--n", "12", "--samples", "30000", "--seed", "5"},
      {"simulate", "--n", "12", "--trials", "500", "--seed", "3", "--format", "json"},
      {"figure", "kmean", "--n-min", "4", "--n-max", "30"},
  };
  for (const auto& command : commands) {
    auto one = command, many = command;
    one.insert(one.end(), {"--threads", "1"});
    many.insert(many.end(), {"--threads", "4"});
    const Invocation a = invoke(one), b = invoke(many), c = invoke(many);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
  }
}

TEST_CASE("relative output paths follow the output directory variable") {
  const auto dir = std::filesystem::temp_directory_path() / "chordlab_cli_test";
  std::filesystem::create_directories(dir);
  ::setenv(cli::kOutputDirEnv, dir.c_str(), 1);
  const Invocation r = invoke({"census", "rnk", "--n", "4", "--output", "rnk4.csv"});
  ::unsetenv(cli::kOutputDirEnv);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(dir / "rnk4.csv", std::ios::binary);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == "n,k1,k2,k3,k4\r\n4,6,12,6,1\r\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("csv quoting") {
  CHECK(cli::csv_field("plain") == "plain");
  CHECK(cli::csv_field("a,b") == "\"a,b\"");
  CHECK(cli::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(cli::format_real(0.1) == "0.1");
}
