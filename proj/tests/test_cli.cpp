#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "graphcd/cli.hpp"
#include "json.hpp"

using namespace graphcd;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("graphcd_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kK2 = "vertex a 1\nvertex b 1\nedge a b 1\n";

}  // namespace

TEST_CASE("cli: curvature on K2") {
  Scratch s;
  const auto g = s.write("k2.wg", kK2);

  auto r = run({"curvature", "--graph", g, "--dimension", "inf"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["graph_name"] == "k2");
  CHECK(j["dimension"] == "inf");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["vertex_label"] == "a");
  for (const auto& row : j["rows"]) CHECK(std::abs(row["kappa"].get<double>() - 2.0) <= 1e-9);
  CHECK(std::abs(j["min_kappa"].get<double>() - 2.0) <= 1e-9);
  CHECK(j["tool_version"].is_string());
  CHECK_FALSE(j["rows"][0].contains("witness"));

  r = run({"curvature", "--graph", g, "--dimension", "2", "--witness"});
  REQUIRE(r.code == kExitOk);
  j = json::parse(r.out);
  for (const auto& row : j["rows"]) {
    CHECK(std::abs(row["kappa"].get<double>() - 1.0) <= 1e-9);
    CHECK(row["witness"].size() == 2);
  }

  r = run({"curvature", "--graph", g, "--dimension", "inf", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("vertex,kappa\na,", 0) == 0);
}

TEST_CASE("cli: usage and input errors exit 2") {
  Scratch s;
  const auto g = s.write("k2.wg", kK2);
  CHECK(run({"curvature", "--graph", s.path("missing.wg"), "--dimension", "inf"}).code == kExitUsage);
  CHECK(run({"curvature", "--graph", g, "--dimension", "-3"}).code == kExitUsage);
  CHECK(run({"curvature", "--graph", g}).code == kExitUsage);
  CHECK(run({"curvature", "--graph", g, "--dimension", "inf", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"curvature", "--graph", s.write("bad.wg", "vertex a 0\n"), "--dimension", "inf"}).code ==
        kExitUsage);

  const auto r = run({"verify", "--graph", g, "--inequality", "cdn", "--K", "1", "--times", "0.1"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--n") != std::string::npos);
  CHECK(run({"verify", "--graph", g, "--inequality", "nope", "--K", "1", "--times", "0.1"}).code == kExitUsage);
  CHECK(run({"verify", "--graph", g, "--inequality", "gradient", "--K", "x", "--times", "0.1"}).code ==
        kExitUsage);
  CHECK(run({"verify", "--graph", g, "--inequality", "gradient", "--K", "1", "--times", "0,1"}).code ==
        kExitUsage);
  CHECK(run({"verify", "--graph", g, "--inequality", "gradient", "--K", "1", "--times", "0.1", "--functions",
             "random:x"})
            .code == kExitUsage);
  CHECK(run({"heat", "--graph", g, "--f", s.write("f.csv", "vertex,value\na,1\n"), "--t", "1"}).code ==
        kExitUsage);
  CHECK(run({"heat", "--graph", g, "--f", s.write("g.csv", "vertex,value\na,1\nb,0\n"), "--t", "-1"}).code ==
        kExitUsage);
}

TEST_CASE("cli: verify examples") {
  Scratch s;
  const auto g = s.write("k2.wg", kK2);

  auto r = run({"verify", "--graph", g, "--inequality", "gradient", "--K", "auto", "--times", "0.1,1"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["inequality"] == "gradient_estimate");
  CHECK(std::abs(j["K"].get<double>() - 2.0) <= 1e-9);
  CHECK(j["graph"] == "k2");
  CHECK(j["min_slack"].get<double>() >= -1e-9);
  CHECK(j["records"].size() == (2 + 2 + 50 + 1) * 2 * 2);

  r = run({"verify", "--graph", g, "--inequality", "gradient", "--K", "2.1", "--times", "0.01,0.1", "--functions",
           "witnesses"});
  CHECK(r.code == kExitViolation);
  CHECK(r.err.find("violation") != std::string::npos);
  CHECK(json::parse(r.out)["min_slack"].get<double>() < 0.0);

  r = run({"verify", "--graph", g, "--inequality", "gamma2-identity", "--K", "1.7", "--times", "0.5"});
  CHECK(r.code == kExitOk);

  r = run({"verify", "--graph", g, "--inequality", "cdn", "--K", "auto", "--n", "2", "--times", "0.1,1",
           "--functions", "random:3:4"});
  CHECK(r.code == kExitOk);
  j = json::parse(r.out);
  CHECK(std::abs(j["K"].get<double>() - 1.0) <= 1e-9);
  CHECK(j["n"] == 2.0);

  const auto f = s.write("f.csv", "vertex,value\nb,0\na,1\n");
  r = run({"verify", "--graph", g, "--inequality", "variance", "--K", "2", "--times", "0.5", "--functions",
           "file:" + f, "--output", s.path("rep.json"), "--csv", s.path("rep.csv")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  j = json::parse(slurp(s.path("rep.json")));
  REQUIRE(j["records"].size() == 2);
  CHECK(j["records"][0]["function"] == "file:f.csv");
  CHECK(slurp(s.path("rep.csv")).rfind("function,t,vertex,lhs,rhs\n", 0) == 0);
}

TEST_CASE("cli: numerical failure exits 1") {
  Scratch s;
  const auto g = s.write("k2.wg", kK2);
  // exp(-2Kt) overflows, so quadrature cannot converge
  const auto r = run({"verify", "--graph", g, "--inequality", "gamma2-identity", "--K", "-1000", "--times", "5",
                      "--functions", "witnesses"});
  CHECK(r.code == kExitInternal);
  CHECK(r.err.find("internal error") != std::string::npos);
}

TEST_CASE("cli: heat") {
  Scratch s;
  const auto g = s.write("k2.wg", kK2);
  const auto f = s.write("f.csv", "vertex,value\na,1\nb,0\n");
  auto r = run({"heat", "--graph", g, "--f", f, "--t", "0"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "vertex,value\na,1\nb,0\n");

  r = run({"heat", "--graph", g, "--f", f, "--t", "0.5", "--output", s.path("out.csv")});
  REQUIRE(r.code == kExitOk);
  const auto text = slurp(s.path("out.csv"));
  const auto a = std::stod(text.substr(text.find("a,") + 2));
  CHECK(std::abs(a - 0.5 * (1 + std::exp(-1.0))) <= 1e-14);

  const auto ones = s.write("ones.csv", "vertex,value\na,1\nb,1\n");
  r = run({"heat", "--graph", g, "--f", ones, "--t", "3.7"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "vertex,value\na,1\nb,1\n");
}

TEST_CASE("cli: identical invocations give byte-identical reports") {
  Scratch s;
  const auto g = s.write("g.wg",
                         "vertex a 1\nvertex b 2\nvertex c 0.5\nvertex d 1.5\n"
                         "edge a b 1\nedge b c 2.5\nedge c d 0.7\nedge a d 1.2\nedge a c 0.3\n");
  const std::vector<std::string> args{"verify", "--graph",     g,         "--inequality", "cdn",
                                      "--K",    "auto",        "--n",     "5",            "--times",
                                      "0.01,0.5,2", "--functions", "random:11:20"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("e-") != std::string::npos);
}
