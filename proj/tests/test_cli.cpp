#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" EIGENPATH_CLI "' " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return "'" EIGENPATH_DATA "/" + name + "'"; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("eigenpath_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, ConditionOfDiagonalExample) {
  const Result r = run("condition " + data("a-diag-1-minus1.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["result"]["well_posed"].get<bool>());
  EXPECT_NEAR(j["result"]["mu_v"].get<double>(), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(j["result"]["mu"].get<double>(), 1.0, 1e-14);
}

TEST(Cli, IllPosedTripleIsAnAnswer) {
  const Result r = run("condition " + data("ill-posed-triple.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["result"]["well_posed"].get<bool>());
  EXPECT_TRUE(j["result"]["mu"].is_null());
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("condition " + data("malformed.json")).code, 2);
  EXPECT_EQ(run("condition /nonexistent/triple.json").code, 2);
  EXPECT_EQ(run("track " + data("linear-path-3.json") + " --eig 7").code, 2);
  EXPECT_EQ(run("verify no-such-suite").code, 2);
  EXPECT_EQ(run("condition " + data("a-diag-1-minus1.json") + " --tol -1").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("examples", "EIGENPATH_SEED=abc").code, 2);
}

TEST(Cli, PathAndNewtonFailuresExitThree) {
  const Result r = run("track " + data("collision-path.json") + " --eig 1");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(run("newton " + data("newton-undefined.json")).code, 3);
}

TEST(Cli, NewtonConvergesOnWilkinson) {
  const Result r = run("newton " + data("newton-wilkinson.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  const auto& d = j["result"]["distances_to_target"];
  ASSERT_GE(d.size(), 4u);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_LT(d[k].get<double>(), d[k - 1].get<double>());
  EXPECT_TRUE(j["verdicts"][0]["passed"].get<bool>());
}

TEST(Cli, TrackReportAndCsv) {
  const fs::path dir = scratch("track");
  const fs::path csv = dir / "run.csv";
  const Result r = run("--csv '" + csv.string() + "' track " + data("orbit-path-2.json") + " --eig 1");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  const auto& res = j["result"];
  EXPECT_TRUE(res["all_certified"].get<bool>());
  EXPECT_TRUE(res["bound_satisfied"].get<bool>());
  EXPECT_EQ(res["mesh"].size(), res["K"].get<std::size_t>() + 1);
  EXPECT_EQ(res["mesh"].front().get<double>(), 0.0);
  EXPECT_EQ(res["mesh"].back().get<double>(), 1.0);
  const std::string table = slurp(csv);
  EXPECT_EQ(static_cast<std::size_t>(std::count(table.begin(), table.end(), '\n')), res["mesh"].size() + 1);
}

TEST(Cli, MeshMatchesTrack) {
  const Result m = run("mesh " + data("linear-path-3.json") + " --eig 0");
  const Result t = run("track " + data("linear-path-3.json") + " --eig 0");
  ASSERT_EQ(m.code, 0);
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(json::parse(m.out)["result"]["mesh"], json::parse(t.out)["result"]["mesh"]);
}

TEST(Cli, ByteReproducible) {
  const std::string args = "--json verify condition --trials 10";
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Result c = run("--seed 7 " + args);
  const Result d = run(args, "EIGENPATH_SEED=7");
  EXPECT_EQ(c.out, d.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(json::parse(c.out)["config"]["seed"].get<std::uint64_t>(), 7u);
}

TEST(Cli, ExamplesWriteDirMatchesData) {
  const fs::path dir = scratch("examples");
  ASSERT_EQ(run("examples --write-dir '" + dir.string() + "'").code, 0);
  std::size_t count = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    EXPECT_EQ(slurp(e.path()), slurp(fs::path(EIGENPATH_DATA) / e.path().filename())) << e.path();
    ++count;
  }
  EXPECT_EQ(count, 5u);
}

TEST(Cli, VerifyConstants) {
  const Result r = run("verify constants");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[PASS]"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
