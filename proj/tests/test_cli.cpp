#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(FREBELS_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("frebels_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return dir / name;
  }

  std::string graph(int n, bool cycle) {
    std::string s = "n " + std::to_string(n) + "\n";
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (cycle ? b == (a + 1) % n : a != b) s += std::to_string(a) + " " + std::to_string(b) + "\n";
    return s;
  }

  std::string flood(int n, const char* shape) {
    return R"({"n": )" + std::to_string(n) + R"(, "f": 1, "protocol": "FLOOD", "horizon": 40,
      "schedule": {"graph_sequence": {"graphs": [{")" + shape + R"(": true}]}}})";
  }

  fs::path dir;
};

const char* kK5Scenario = R"({
  "n": 5, "f": 1, "protocol": "FRR", "seed": 1, "horizon": 60,
  "schedule": {"graph_sequence": {"graphs": [{"complete": true}], "start": 1}},
  "events": [{"process": 0, "start": 0}, {"process": 1, "start": 0}, {"process": 2, "start": 0}],
  "adversary": {"4": {"policy": "silent"}}
})";

}  // namespace

TEST_F(Cli, RunWritesTraceAndVerdict) {
  const auto path = write("k5.json", kK5Scenario);
  const Result r = cli("run " + path.string() + " --out-dir " + (dir / "out").string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "out" / "k5.trace"));
  EXPECT_TRUE(contains(slurp(dir / "out" / "k5.verdict"), "correctness: PASS"));
}

TEST_F(Cli, RunRejectsBadInput) {
  const auto bad = write("bad.json", R"({"n": 4, "f": 2, "horizon": 5, "schedule": {"default_delay": 1}})");
  const Result r = cli("run " + bad.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.out, "n >= 2f+1"));
  EXPECT_EQ(cli("run " + (dir / "missing.json").string()).code, 2);
  EXPECT_EQ(cli("run " + write("junk.json", "{").string()).code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST_F(Cli, RunReportsPropertyFailure) {
  const Result r = cli("run " + std::string(FREBELS_GOLDEN_DIR) + "/fr_cycle_starved.json --out-dir " + dir.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "correctness: FAIL"));
}

TEST_F(Cli, BatchOutputMatchesGoldenFiles) {
  const Result r = cli("run " + std::string(FREBELS_GOLDEN_DIR) + " --out-dir " + dir.string());
  EXPECT_EQ(r.code, 1);  // the starved cycle fails on purpose
  int compared = 0;
  for (const auto& e : fs::directory_iterator(FREBELS_GOLDEN_DIR)) {
    if (e.path().extension() != ".trace" && e.path().extension() != ".verdict") continue;
    EXPECT_EQ(slurp(dir / e.path().filename()), slurp(e.path())) << e.path();
    ++compared;
  }
  EXPECT_GE(compared, 20);
}

TEST_F(Cli, OverridesChangeTheRun) {
  const auto path = write("k5.json", kK5Scenario);
  cli("run " + path.string() + " --out-dir " + (dir / "a").string());
  cli("run " + path.string() + " --horizon 8 --out-dir " + (dir / "b").string());
  EXPECT_NE(slurp(dir / "a" / "k5.trace"), slurp(dir / "b" / "k5.trace"));
  EXPECT_TRUE(contains(slurp(dir / "b" / "k5.trace"), "# horizon 8"));
}

TEST_F(Cli, CheckGraph) {
  Result r = cli("check-graph " + write("k5.txt", graph(5, false)).string() + " --f 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "solvable: yes"));
  r = cli("check-graph " + write("k4.txt", graph(4, false)).string() + " --f 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "solvable: no (co-root)"));
  r = cli("check-graph " + write("c5.txt", graph(5, true)).string() + " --f 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "solvable: no (connectivity)"));
  EXPECT_EQ(cli("check-graph " + write("bad.txt", "0 -> x\n").string()).code, 2);
}

TEST_F(Cli, Scenarios) {
  Result r = cli("scenario frimp --n 4 --f 1 --protocol FR --out-dir " + dir.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "local views identical at v: yes"));
  EXPECT_TRUE(fs::exists(dir / "r1.trace"));
  r = cli("scenario infinity --n 5 --f 1 --k 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "Relay FAIL in r′"));
  EXPECT_EQ(cli("scenario infinity --n 3 --f 1").code, 2);
  EXPECT_EQ(cli("scenario elsewhere").code, 2);
}

TEST_F(Cli, CheckAbstraction) {
  const auto path = write("k5.json", kK5Scenario);
  Result r = cli("check-abstraction " + path.string() + " --depth 3");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "finite abstraction: yes"));
  EXPECT_TRUE(contains(r.out, "dynamic abstraction to depth 3: yes"));
  // One pass of G1.G2 has no (2,3) opportunity after G2, so G1.G2.G1 fails.
  const auto once = write("once.json", R"({"n": 4, "f": 1, "horizon": 20,
    "schedule": {"graph_sequence": {"graphs": [[[0, 1], [2, 3]], [[1, 2]]], "phase_length": 2, "repeat": 1}}})");
  r = cli("check-abstraction " + once.string() + " --depth 2");
  EXPECT_EQ(r.code, 0) << r.out;
  r = cli("check-abstraction " + once.string() + " --depth 3");
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_TRUE(contains(r.out, "dynamic abstraction to depth 3: no"));
  EXPECT_EQ(cli("check-abstraction " + std::string(FREBELS_GOLDEN_DIR) + "/fr_entries.json").code, 2);
}

TEST_F(Cli, Epistemic) {
  Result r = cli("epistemic " + write("k5.json", flood(5, "complete")).string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "formula3: true\nformula6: true\nsolvable: yes\nagrees: yes"));
  r = cli("epistemic " + write("c5.json", flood(5, "cycle")).string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "formula3: false"));
  EXPECT_TRUE(contains(r.out, "agrees: yes"));
  r = cli("epistemic " + write("k4.json", flood(4, "complete")).string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "formula6: false"));
  EXPECT_TRUE(contains(r.out, "agrees: yes"));
  EXPECT_EQ(cli("epistemic " + write("frr.json", kK5Scenario).string()).code, 2);
}

TEST_F(Cli, ExportDot) {
  Result r = cli("export-dot " + write("c3.txt", graph(3, true)).string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "2 -> 0;"));
  r = cli("export-dot " + write("k5.json", kK5Scenario).string() + " --out-dir " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(slurp(dir / "k5.dot"), "4 -> 3;"));
}

TEST_F(Cli, OutputIsDeterministic) {
  const auto path = write("k5.json", kK5Scenario);
  EXPECT_EQ(cli("check-abstraction " + path.string() + " --from-run").out,
            cli("check-abstraction " + path.string() + " --from-run").out);
  EXPECT_EQ(cli("scenario frimp --n 5 --f 1").out, cli("scenario frimp --n 5 --f 1").out);
}
