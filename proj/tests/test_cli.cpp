#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "plusone/fixtures.hpp"
#include "plusone/json_io.hpp"

using namespace plusone;

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(PLUSONE_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Run r{-1, ""};
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& f) { return std::string(PLUSONE_DATA_DIR) + "/" + f; }

}  // namespace

TEST(Cli, FibrationsSpecialCovering) {
  auto r = run("fibrations --input " + data("special_covering.json"));
  ASSERT_EQ(r.rc, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["classification"], "Two");
  Json zero = Json::array({"0", "0"}), one = Json::array({"1", "0"});
  Json w = Json::array({Json::array({zero, zero, zero}), Json::array({zero, zero, one})});
  auto got = j["witnesses"];
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, w);
}

TEST(Cli, FibrationsExamples) {
  EXPECT_EQ(Json::parse(run("fibrations --input " + data("example_no_fibration.json")).out)["classification"], "None");
  EXPECT_EQ(Json::parse(run("fibrations --input " + data("example_one_fibration.json")).out)["classification"], "One");
  EXPECT_EQ(Json::parse(run("fibrations --input " + data("phi0.json")).out)["classification"], "ManyOrLinear");
}

TEST(Cli, LiouvilleIv) {
  auto r = run("liouville --model iv");
  ASSERT_EQ(r.rc, 0);
  auto j = Json::parse(r.out);
  EXPECT_TRUE(j["vanishes"].get<bool>());
  EXPECT_TRUE(j["L1"]["terms"].empty());
  EXPECT_TRUE(j["L2"]["terms"].empty());
}

TEST(Cli, LiouvilleFromFile) {
  auto j = Json::parse(run("liouville --input " + data("structure_pencil_exy.json")).out);
  EXPECT_FALSE(j["vanishes"].get<bool>());
}

TEST(Cli, Verify) {
  auto r = run("verify --seed 3");
  EXPECT_EQ(r.rc, 0);
  auto j = Json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  bool saw_ib = false;
  for (auto& c : j["checks"]) {
    EXPECT_NE(c["status"], "fail") << c["id"];
    if (c["id"] == "projstruct.liouville_i_b") {
      saw_ib = true;
      EXPECT_EQ(c["status"], "paper-discrepancy");
    }
  }
  EXPECT_TRUE(saw_ib);
}

TEST(Cli, ByteStable) {
  for (std::string a : {std::string("verify --seed 5"), "fibrations --input " + data("special_covering.json"),
                        std::string("pencil --fixture nodal --gamma 1/3"), std::string("curvature --fixture exy")}) {
    auto r1 = run(a), r2 = run(a);
    EXPECT_EQ(r1.rc, 0) << a;
    EXPECT_EQ(r1.out, r2.out) << a;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").rc, 2);
  EXPECT_EQ(run("frobnicate").rc, 2);
  EXPECT_EQ(run("fibrations").rc, 2);
  EXPECT_EQ(run("normalize --input x.json --backend quad").rc, 2);
  EXPECT_EQ(run("normalize --input /nonexistent.json").rc, 1);
  EXPECT_EQ(run("liouville --model nope").rc, 1);
  EXPECT_EQ(run("crossratio --model iv --points 0 0 1 0 2 0 3 0 --grid 0 1 1 2 2 2").rc, 0);
  EXPECT_EQ(run("crossratio --model iv --points 0 0 1 0 2 1 3 0 --grid 0 1 1 2 2 2").rc, 1);
  EXPECT_EQ(run("--help").rc, 0);
}

TEST(Cli, BackendEnvOverrides) {
  std::string cmd = "PLUSONE_BACKEND=float " + std::string(PLUSONE_CLI) + " normalize --input " + data("phi0.json");
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  EXPECT_EQ(WEXITSTATUS(pclose(p)), 0);
  EXPECT_EQ(out.find("\"0\""), std::string::npos);  // float scalars are numbers
  std::string bad = "PLUSONE_BACKEND=gmp " + std::string(PLUSONE_CLI) + " verify >/dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 2);
}

TEST(Cli, NormalizeRoundTrip) {
  auto r = run("normalize --input " + data("c_family_2_3.json"));
  ASSERT_EQ(r.rc, 0);
  auto c = cocycle_from_json<Exact>(Json::parse(r.out));
  EXPECT_TRUE(c.is_normal());
  auto e = Json::parse(run("equivalent --input " + data("c_family_2_3.json") + " --other " + data("c_family_2_3.json")).out);
  EXPECT_TRUE(e["equivalent"].get<bool>());
}

TEST(Cli, ActIdentity) {
  auto r = run("act --input " + data("special_covering.json") + " --theta 0 0 0 1");
  ASSERT_EQ(r.rc, 0);
  EXPECT_EQ(Json::parse(r.out), read_json(data("special_covering.json")));
}

TEST(Cli, GeodesicCsv) {
  auto r = run("geodesic --model iv --state 0 0 0.5 --step 0.1 --steps 10");
  ASSERT_EQ(r.rc, 0);
  EXPECT_EQ(r.out.substr(0, 8), "t,x,y,z\n");
  auto last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  double t, x, y, z;
  ASSERT_EQ(std::sscanf(last.c_str(), "%lf,%lf,%lf,%lf", &t, &x, &y, &z), 4);
  EXPECT_NEAR(x, 1.0, 1e-12);
  EXPECT_NEAR(y, 0.5, 1e-12);
}

TEST(Cli, CrossRatioCsv) {
  auto r = run("crossratio --model iv --points -1 0 -0.3 0 0.3 0 1 0 --grid -0.5 0.5 0.5 1 3 3");
  ASSERT_EQ(r.rc, 0);
  EXPECT_EQ(r.out.substr(0, 16), "x,y,re,im,valid\n");
  int lines = 0;
  for (char ch : r.out) lines += ch == '\n';
  EXPECT_EQ(lines, 10);
}

TEST(Cli, OutFile) {
  std::string path = testing::TempDir() + "plusone_out.json";
  ASSERT_EQ(run("pencil --fixture exy --out " + path).rc, 0);
  auto P = structure_from_json<Exact>(read_json(path));
  auto M = catalog<Exact>("pencil_exy", {}, 8).structure;
  EXPECT_TRUE((P.B - M.B).is_zero());
  EXPECT_TRUE((P.C - M.C).is_zero());
}

// shipped data matches the library
TEST(Cli, DataFixtures) {
  int N = 8;
  auto same = [](const Json& a, const Json& b) { return a == b; };
  EXPECT_TRUE(same(read_json(data("phi0.json")), to_json(Cocycle<Exact>::linear(N))));
  EXPECT_TRUE(same(read_json(data("special_covering.json")), to_json(special_covering<Exact>(N))));
  EXPECT_TRUE(same(read_json(data("example_no_fibration.json")), to_json(example_no_fibration<Exact>(N))));
  EXPECT_TRUE(same(read_json(data("example_one_fibration.json")), to_json(example_one_fibration<Exact>(N))));
  EXPECT_TRUE(same(read_json(data("structure_iv.json")), to_json(catalog<Exact>("iv", {}, N).structure)));
  EXPECT_TRUE(same(read_json(data("pencil_nodal_gamma_1.json")), to_json(nodal_family<Exact>(Exact(1), N).pencil)));
  auto sl2 = structure_from_json<Exact>(read_json(data("structure_sl2.json")));
  EXPECT_EQ(sl2.basepoint[0], Exact(1));
  EXPECT_EQ(sl2.basepoint[1], Exact(0));
  // the special covering from its closed form, not from the fixture code
  auto c = cocycle_from_json<Exact>(read_json(data("special_covering.json")));
  EXPECT_EQ(c.b_part().coeff(-2, 3), Exact::rational(1, 2));
  EXPECT_EQ(c.b_part().coeff(-3, 5), Exact::rational(3, 8));
}
