#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

/// Runs the CLI with the given arguments; stderr is folded into out when asked.
Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string("\"") + AGLMU_CLI_PATH + "\" " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, MuTrivialToFull) {
  const auto r = run("mu --q 4 trivial full");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4\n");
}

TEST(Cli, MuExplainVanishingClassicFactor) {
  const auto r = run("mu --q 9 trivial \"d=4;H=full\" --explain");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.starts_with("0\n")) << r.out;
  EXPECT_NE(r.out.find("mu(4)=0"), std::string::npos) << r.out;
}

TEST(Cli, MuByIndexAndJson) {
  const auto r = run("mu --p 2 --n 2 \"#0\" \"#9\" --json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"mu\": 4"), std::string::npos) << r.out;
}

TEST(Cli, MuNotContainedIsDomainError) {
  const auto r = run("mu --q 4 full trivial", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("NotContained"), std::string::npos) << r.out;
}

TEST(Cli, BadDescriptorIsUsageError) {
  EXPECT_EQ(run("mu --q 4 trivial \"d=2;H=0\"").code, 1);
}

TEST(Cli, SubgroupsCsv) {
  const auto r = run("subgroups --q 5 --csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 15u);
}

TEST(Cli, EulerianQ4) {
  const auto r = run("eulerian --q 4 --m 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "96\n");
}

TEST(Cli, TableJsonHasTopEntry) {
  const auto r = run("table --q 4 --json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[0,9,4]"), std::string::npos);
}

TEST(Cli, TableCsvRows) {
  const auto r = run("table --q 2 --csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "i,j,d1,d2,dimH1,dimH2,mu\n0,0,1,1,0,0,1\n0,1,1,1,0,1,-1\n1,1,1,1,1,1,1\n");
}

TEST(Cli, DesignsCsv) {
  const auto r = run("designs --q 4 --k-min 2 --k-max 2 --csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 11u);
  EXPECT_EQ(run("designs --q 4 --k-min 3 --k-max 9").code, 1);
}

TEST(Cli, VerifyRejectsNonPrimePower) {
  const auto r = run("verify --q 6", true);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("not a prime power"), std::string::npos) << r.out;
}

TEST(Cli, VerifyPasses) {
  const auto r = run("verify --q 4,5 --level full");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("q=5 PASS"), std::string::npos) << r.out;
}

TEST(Cli, SizeCapIsUsageError) {
  EXPECT_EQ(run("subgroups --q 64 --size-cap 32").code, 1);
}

TEST(Cli, MissingArgumentsAreUsageErrors) {
  EXPECT_EQ(run("eulerian --q 4").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST(Cli, CacheIsReused) {
  const auto dir = std::filesystem::temp_directory_path() / ("aglmu_cli_cache_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const auto first = run("table --q 8 --json --cache \"" + dir.string() + "\"");
  EXPECT_TRUE(std::filesystem::exists(dir / "aglmu_q8_table.json"));
  const auto second = run("-v table --q 8 --json --cache \"" + dir.string() + "\"", false);
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
  const auto logged = run("-v table --q 8 --json --cache \"" + dir.string() + "\"", true);
  EXPECT_NE(logged.out.find("loaded"), std::string::npos);
  std::filesystem::remove_all(dir);
}
