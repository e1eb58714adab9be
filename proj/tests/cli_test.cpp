#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RunResult {
  int status = -1;
  std::string out;
};

const char* cli_path() { return std::getenv("SIMPSYM_CLI"); }

RunResult run_cli(const std::string& args) {
  RunResult result;
  const std::string cmd = std::string("\"") + cli_path() + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return result;
  }
  char buffer[4096];
  while (std::fgets(buffer, sizeof(buffer), pipe) != nullptr) {
    result.out += buffer;
  }
  const int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.push_back("");
  }
  return fields;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (cli_path() == nullptr) {
      GTEST_SKIP() << "SIMPSYM_CLI not set";
    }
  }
};

TEST_F(CliTest, VersionFlag) {
  const auto r = run_cli("--version");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

TEST_F(CliTest, SimulateExactIsPeriodic) {
  const auto r = run_cli("simulate --scheme exact --steps 15 --periods 1");
  ASSERT_EQ(r.status, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 17u);  // header + N+1 rows
  EXPECT_EQ(lines[0], "t,p,q,H,H_d");
  const auto first = fields_of(lines[1]);
  const auto last = fields_of(lines[16]);
  ASSERT_EQ(first.size(), 5u);
  EXPECT_EQ(first[0], "0");
  EXPECT_NEAR(std::stod(last[1]), std::stod(first[1]), 1e-12);
  EXPECT_NEAR(std::stod(last[2]), std::stod(first[2]), 1e-12);
  EXPECT_NEAR(std::stod(last[0]), 1.0, 1e-12);
}

TEST_F(CliTest, SimulateSimpsonTracksSine) {
  const auto r = run_cli("simulate --scheme simpson --steps 15");
  ASSERT_EQ(r.status, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 17u);
  double max_diff = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    ASSERT_EQ(f.size(), 5u);
    const double t = std::stod(f[0]);
    const double q = std::stod(f[2]);
    max_diff = std::fmax(max_diff, std::fabs(q - std::sin(kTwoPi * t)));
  }
  // Fourth-order magnitude at N = 15: visible but far below the curve.
  EXPECT_LT(max_diff, 1e-3);
  EXPECT_GT(max_diff, 1e-8);
}

TEST_F(CliTest, SimulateOutsideWindowExitsTwo) {
  EXPECT_EQ(run_cli("simulate --scheme simpson --steps 2").status, 2);
}

TEST_F(CliTest, UsageErrorsExitSixtyFour) {
  EXPECT_EQ(run_cli("simulate").status, 64);  // --scheme is required
  EXPECT_EQ(run_cli("simulate --scheme warp --steps 10").status, 64);
  EXPECT_EQ(run_cli("simulate --scheme exact --steps 1").status, 64);
  EXPECT_EQ(run_cli("simulate --scheme exact --steps 10 --bogus 3").status, 64);
  EXPECT_EQ(run_cli("").status, 64);  // a subcommand is required
  EXPECT_EQ(run_cli("warp").status, 64);
  EXPECT_EQ(run_cli("converge --scheme simpson --meshes abc").status, 64);
  EXPECT_EQ(run_cli("converge --scheme simpson --meshes 10,7").status, 64);
  EXPECT_EQ(run_cli("converge --scheme exact").status, 64);
  EXPECT_EQ(run_cli("stability --s-min 2 --s-max 1").status, 64);
  EXPECT_EQ(run_cli("stability --points 0").status, 64);
}

TEST_F(CliTest, SimulateWritesFileWithManifest) {
  const std::string csv_path = ::testing::TempDir() + "simpsym_cli_traj.csv";
  const std::string args =
      "simulate --scheme newmark --steps 12 --out \"" + csv_path + "\"";
  ASSERT_EQ(run_cli(args).status, 0);
  const std::string first = slurp(csv_path);
  ASSERT_FALSE(first.empty());
  EXPECT_EQ(lines_of(first).size(), 14u);

  const std::string manifest = slurp(csv_path + ".manifest");
  EXPECT_NE(manifest.find("command=simulate\n"), std::string::npos);
  EXPECT_NE(manifest.find("version=0.1.0\n"), std::string::npos);
  EXPECT_NE(manifest.find("timestamp="), std::string::npos);
  EXPECT_NE(manifest.find("scheme=newmark\n"), std::string::npos);
  EXPECT_NE(manifest.find("steps=12\n"), std::string::npos);

  // Rerun: the CSV must be byte-identical (the timestamp lives in the sidecar).
  ASSERT_EQ(run_cli(args).status, 0);
  EXPECT_EQ(slurp(csv_path), first);
  std::remove(csv_path.c_str());
  std::remove((csv_path + ".manifest").c_str());
}

TEST_F(CliTest, ConvergeReproducesTableVerdicts) {
  const auto r = run_cli("converge --scheme simpson");
  ASSERT_EQ(r.status, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 13u);  // header + 4 quantities x 3 meshes
  EXPECT_EQ(lines[0], "quantity,N,error,order,verdict");

  const auto momentum10 = fields_of(lines[1]);
  ASSERT_EQ(momentum10.size(), 5u);
  EXPECT_EQ(momentum10[0], "momentum");
  EXPECT_EQ(momentum10[1], "10");
  EXPECT_TRUE(momentum10[3].empty());  // no pairwise order at the first mesh
  EXPECT_EQ(momentum10[4], "order-4");

  const auto momentum20 = fields_of(lines[2]);
  EXPECT_FALSE(momentum20[3].empty());
  EXPECT_NEAR(std::stod(momentum20[3]), 4.0, 0.2);

  bool saw_exact_hd = false;
  for (const auto& line : lines) {
    if (line.rfind("energy_Hd,", 0) == 0) {
      saw_exact_hd = fields_of(line)[4] == "exact" || saw_exact_hd;
    }
  }
  EXPECT_TRUE(saw_exact_hd);
}

TEST_F(CliTest, ConvergeNewmarkKeepsEnergyExact) {
  const auto r = run_cli("converge --scheme newmark");
  ASSERT_EQ(r.status, 0);
  bool saw = false;
  for (const auto& line : lines_of(r.out)) {
    if (line.rfind("energy_H,", 0) == 0) {
      EXPECT_EQ(fields_of(line)[4], "exact");
      saw = true;
    }
  }
  EXPECT_TRUE(saw);
}

TEST_F(CliTest, ConvergeSingleMeshHasEmptyOrders) {
  const auto r = run_cli("converge --scheme simpson --meshes 10");
  ASSERT_EQ(r.status, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 5u);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    ASSERT_EQ(f.size(), 5u);
    EXPECT_TRUE(f[3].empty());
    // A single mesh pins no order; the Simpson discrete energy still sits
    // below the round-off threshold and reports exact conservation.
    EXPECT_EQ(f[4], f[0] == "energy_Hd" ? "exact" : "indeterminate");
  }
}

TEST_F(CliTest, ConvergeOutsideWindowExitsTwo) {
  EXPECT_EQ(run_cli("converge --scheme simpson --meshes 2,3").status, 2);
}

TEST_F(CliTest, StabilityScanDefaultsAllStable) {
  const auto r = run_cli("stability");
  ASSERT_EQ(r.status, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 101u);
  EXPECT_EQ(lines[0], "s,discriminant,root_modulus,stable");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[3], "1") << lines[i];
    EXPECT_EQ(f[2], "1") << "root modulus should print as exactly 1";
  }
  EXPECT_EQ(run_cli("stability").out, r.out);  // byte-identical rerun
}

TEST_F(CliTest, StabilityScanFlagsUnstableRange) {
  const auto r = run_cli("stability --s-min 3 --s-max 4 --points 5");
  ASSERT_EQ(r.status, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 6u);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    EXPECT_EQ(fields_of(lines[i])[3], "0") << lines[i];
  }
}

TEST_F(CliTest, StabilityBoundaryApproachStaysStable) {
  const double s = 2.8284271247461903 * (1.0 - 1e-12);
  char args[128];
  std::snprintf(args, sizeof(args), "stability --points 1 --s-min %.17g --s-max %.17g",
                s, s);
  const auto r = run_cli(args);
  ASSERT_EQ(r.status, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u);
  const auto f = fields_of(lines[1]);
  EXPECT_EQ(f[3], "1");
  EXPECT_LT(std::fabs(std::stod(f[1])), 1e-9);
}

TEST_F(CliTest, StabilitySinglePointUsesSMin) {
  const auto r = run_cli("stability --points 1 --s-min 1.5 --s-max 9");
  ASSERT_EQ(r.status, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(fields_of(lines[1])[0], "1.5");
}

}  // namespace
