#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rrp/instance_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rrp_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  CliRun run(const std::string& args) const {
    std::string cmd = std::string(RRP_CLI_PATH) + " " + args + " >" + path("stdout") + " 2>" + path("stderr");
    int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(path("stdout"));
    r.err = slurp(path("stderr"));
    return r;
  }

  std::string path_instance(const std::string& kappa) const {
    return write("path.json", R"({"nodes":["a","b","c"],"static_links":[["a","b","1"],["b","c","1"]],
      "switches":[{"id":"s","ports":2}],"switch_links":[["a",0,"s",0],["c",0,"s",1]],"adjacency":"explicit",
      "mu":"1/2","demands":[["a","c","2"]],"kappa":")" + kappa + R"(","policy":{"sigma":"inf","delta":"inf","lambda":"inf"}})");
  }

  fs::path dir_;
};

const char* kK4 = R"({"nodes":[1,2,3,4],"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"k":4})";
const char* kSix =
    R"({"elements":["1","2","3","4","5","6"],"clauses":[["1","2","3"],["4","5","6"],["1","2","4"],["3","5","6"],["1","4","5"],["2","3","6"]]})";

}  // namespace

TEST_F(Cli, SolveAuto) {
  auto r = run("solve " + path_instance("1") + " --solver auto");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["optimal_cost"], "1");
  EXPECT_EQ(r.doc()["solver"], "exact");
}

TEST_F(Cli, SolveDecideNo) {
  auto r = run("solve " + path_instance("99/100") + " --decide");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc()["decision"], "no");
  EXPECT_EQ(run("solve " + path_instance("1") + " --decide").code, 0);
}

TEST_F(Cli, SolveUnreadable) {
  auto r = run("solve " + path("missing.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, SolveDecimal) {
  auto r = run("solve " + path_instance("1") + " --decimal");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["optimal_cost"]["exact"], "1");
  EXPECT_TRUE(r.doc()["optimal_cost"].contains("decimal"));
}

TEST_F(Cli, ExactAndPolyAgree) {
  auto inst = write("seg.json", R"({"nodes":["a","b","c"],"static_links":[["a","b","1"],["b","c","1"]],
    "switches":[{"id":"s","ports":3}],"switch_links":[["a",0,"s",0],["b",0,"s",1],["c",0,"s",2]],"adjacency":"explicit",
    "mu":"1/2","demands":[["a","c","2"],["a","b","1"]],"kappa":"2","policy":{"sigma":0,"delta":1,"lambda":"inf"}})");
  auto exact = run("solve " + inst + " --solver exact");
  auto poly = run("solve " + inst + " --solver poly");
  ASSERT_EQ(exact.code, 0) << exact.err;
  ASSERT_EQ(poly.code, 0) << poly.err;
  EXPECT_EQ(exact.doc()["optimal_cost"], "2");
  EXPECT_EQ(poly.doc()["optimal_cost"], exact.doc()["optimal_cost"]);
  EXPECT_EQ(run("solve " + path_instance("1") + " --solver poly").code, 2);
}

TEST_F(Cli, ExactBudget) {
  std::string links, ports;
  for (int p = 0; p < 14; ++p) links += std::string(p ? "," : "") + "[\"n" + std::to_string(p) + "\",0,\"s\"," + std::to_string(p) + "]";
  for (int p = 0; p < 14; ++p) ports += std::string(p ? "," : "") + "\"n" + std::to_string(p) + "\"";
  auto inst = write("big.json", "{\"nodes\":[" + ports + "],\"static_links\":[],\"switches\":[{\"id\":\"s\",\"ports\":14}],"
                                "\"switch_links\":[" + links + "],\"adjacency\":\"explicit\",\"mu\":\"1\",\"demands\":[],"
                                "\"kappa\":\"0\",\"policy\":{\"sigma\":\"inf\",\"delta\":\"inf\",\"lambda\":\"inf\"}}");
  EXPECT_EQ(run("solve " + inst + " --solver exact").code, 2);
  EXPECT_EQ(run("solve " + inst + " --solver exact --force").code, 0);
  EXPECT_EQ(run("solve " + path_instance("1") + " --solver exact").code, 0);
  EXPECT_EQ(std::system(("RRP_PORT_BUDGET=1 " + std::string(RRP_CLI_PATH) + " solve " + path_instance("1") +
                         " --solver exact >/dev/null 2>&1").c_str()) >> 8, 2);
}

TEST_F(Cli, ReduceBisectionThenEvaluate) {
  auto src = write("k4.json", kK4);
  auto cert = write("a.json", R"({"A":[1,2]})");
  auto r = run("reduce --from bisection --source " + src + " --family hypercube --out " + path("bis") + " --certificate " + cert);
  ASSERT_EQ(r.code, 0) << r.err;
  auto w = r.doc()["witness"];
  EXPECT_EQ(w["decision"], "yes");
  EXPECT_EQ(w["components"]["alpha"], "98304");
  EXPECT_EQ(w["components"]["beta"], "816");
  EXPECT_EQ(r.doc()["parameters"]["kappa_1"], "103/48");
  auto params = json::parse(slurp(path("bis.params.json")));
  EXPECT_EQ(params["parameters"]["mu"], "1/96");
  auto roles = json::parse(slurp(path("bis.roles.json")));
  EXPECT_EQ(roles.size(), 128u);

  auto e = run("evaluate " + path("bis.instance.json") + " " + path("bis.config.json") + " " + path("bis.flows.json"));
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(e.doc()["total"], w["cost"]);
  EXPECT_EQ(e.doc()["demands"].size(), 110u);

  auto bad = write("bad.json", R"({"A":[1]})");
  EXPECT_EQ(run("reduce --from bisection --source " + src + " --out " + path("x") + " --certificate " + bad).code, 2);
}

TEST_F(Cli, ReduceTreeThenEvaluate) {
  auto src = write("six.json", kSix);
  auto cert = write("c.json", R"({"cover":[1,2]})");
  auto r = run("reduce --from rxc3-tree --source " + src + " --out " + path("tree") + " --certificate " + cert);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["witness"]["cost"], "428");
  EXPECT_EQ(r.doc()["witness"]["kappa"], "428");
  auto e = run("evaluate " + path("tree.instance.json") + " " + path("tree.config.json") + " " + path("tree.flows.json"));
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(e.doc()["total"], "428");
  auto bad = write("bad.json", R"({"cover":[1,3]})");
  EXPECT_EQ(run("reduce --from rxc3-tree --source " + src + " --out " + path("x") + " --certificate " + bad).code, 2);
}

TEST_F(Cli, ReduceCubeRejectsOddN) {
  auto src = write("nine.json", R"({"elements":["1","2","3","4","5","6","7","8","9"],"clauses":[["1","2","3"],["4","5","6"],
    ["7","8","9"],["1","4","7"],["2","5","8"],["3","6","9"],["1","5","9"],["2","6","7"],["3","4","8"]]})");
  auto r = run("reduce --from rxc3-cube --source " + src + " --out " + path("cube"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("n even"), std::string::npos);
}

TEST_F(Cli, ReduceCubeSummaryOnly) {
  auto src = write("six.json", kSix);
  auto r = run("reduce --from rxc3-cube --source " + src + " --mu 1/2 --no-export");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["parameters"]["beta"], "61");
  EXPECT_EQ(r.doc()["parameters"]["alpha"], "1885");
  EXPECT_EQ(r.doc()["demand_count"], 8388609u);
  EXPECT_FALSE(fs::exists(path("cube.instance.json")));
}

TEST_F(Cli, EvaluateErrors) {
  auto inst = path_instance("1");
  auto cfg = write("cfg.json", R"({"s":[]})");
  auto flows = write("flows.json", R"({"a->c":[{"kind":"dynamic","u":"a","v":"c"}]})");
  auto r = run("evaluate " + inst + " " + cfg + " " + flows);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("a->c"), std::string::npos);
  EXPECT_NE(r.err.find("link not present"), std::string::npos);

  auto with = write("cfg2.json", R"({"s":[[0,1]]})");
  auto ok = run("evaluate " + inst + " " + with + " " + flows);
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.doc()["total"], "1");
}

TEST_F(Cli, EvaluateEmpty) {
  auto inst = write("empty.json", R"({"nodes":["a"],"static_links":[],"switches":[],"switch_links":[],"adjacency":"explicit",
    "mu":"1","demands":[],"kappa":"0","policy":{"sigma":"inf","delta":"inf","lambda":"inf"}})");
  auto r = run("evaluate " + inst + " " + write("cfg.json", "{}") + " " + write("flows.json", "{}"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["total"], "0");
}

TEST_F(Cli, Oracle) {
  auto r = run("oracle bisection " + write("k4.json", kK4));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["width"], 4);
  auto tight = run("oracle bisection " + write("k3.json", R"({"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"k":3})"));
  EXPECT_EQ(tight.code, 1);

  auto x = run("oracle xc3 " + write("six.json", kSix));
  ASSERT_EQ(x.code, 0);
  EXPECT_EQ(x.doc()["cover"], json::array({1, 2}));
  auto none = run("oracle xc3 " + write("none.json", R"({"elements":[1,2,3,4,5,6],
    "clauses":[[1,2,3],[1,2,4],[1,5,6],[2,5,6],[3,4,5],[3,4,6]]})"));
  EXPECT_EQ(none.code, 1);
  EXPECT_TRUE(none.doc()["cover"].is_null());

  std::string edges;
  for (int i = 1; i <= 18; ++i) edges += std::string(i > 1 ? "," : "") + "[" + std::to_string(i) + "," + std::to_string(i % 18 + 1) + "]";
  EXPECT_EQ(run("oracle bisection " + write("big.json", "{\"edges\":[" + edges + "]}")).code, 2);
}

TEST_F(Cli, GenFamily) {
  auto r = run("gen-family --family hypercube --at-least 5 --ports-per-node 1");
  ASSERT_EQ(r.code, 0) << r.err;
  auto inst = rrp::parse_instance(r.out);
  EXPECT_EQ(inst.network.node_count(), 8u);
  EXPECT_EQ(inst.network.wired_port_count(), 8u);
  EXPECT_EQ(run("gen-family --family torus --index 1").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}
