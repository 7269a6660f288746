#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nshmc/image.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(NSHMC_TEST_SCRATCH) / "cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct CliRun {
  int exit_code;
  std::string output;
};

CliRun cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "log.txt";
  const std::string cmd = std::string("\"") + NSHMC_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::size_t line_count(const fs::path& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {(std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, SampleWritesRows) {
  const fs::path dir = scratch("sample");
  const fs::path out = dir / "chain.csv";
  const CliRun r = cli("sample --target gg:p=1,gamma=1 --sampler nshmc2:eps=0.05,lf=10 -n 1000 -o \"" + out.string() + "\"", dir);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(line_count(out), 1001u);
  EXPECT_NE(r.output.find("acceptance rate"), std::string::npos);
  EXPECT_NE(r.output.find("lag-1 acf"), std::string::npos);
  EXPECT_TRUE(fs::exists(out.string() + ".manifest.json"));
}

TEST(Cli, RandomWalkAcceptanceStrictlyBetween) {
  const fs::path dir = scratch("rwmh");
  const fs::path out = dir / "chain.csv";
  const CliRun r = cli("sample --target gg:p=1 --sampler rwmh:std=1 -n 2000 -o \"" + out.string() + "\"", dir);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto at = r.output.find("acceptance rate: ");
  ASSERT_NE(at, std::string::npos);
  const double rate = std::stod(r.output.substr(at + 17));
  EXPECT_GT(rate, 0.0);
  EXPECT_LT(rate, 1.0);
}

TEST(Cli, UsageErrorsExitTwo) {
  const fs::path dir = scratch("usage");
  const CliRun bad_target = cli("sample --target foo -o \"" + (dir / "x.csv").string() + "\"", dir);
  EXPECT_EQ(bad_target.exit_code, 2);
  EXPECT_NE(bad_target.output.find("gg"), std::string::npos);
  EXPECT_EQ(cli("sample --sampler bogus -o \"" + (dir / "y.csv").string() + "\"", dir).exit_code, 2);
  EXPECT_EQ(cli("exp1 --p 0.5 --out-dir \"" + (dir / "e1").string() + "\"", dir).exit_code, 2);
  EXPECT_EQ(cli("exp2 --dim 7 --out-dir \"" + (dir / "e2").string() + "\"", dir).exit_code, 2);
  EXPECT_EQ(cli("exp1 --no-such-flag", dir).exit_code, 2);
  EXPECT_EQ(cli("", dir).exit_code, 2);
  EXPECT_EQ(cli("--help", dir).exit_code, 0);
}

TEST(Cli, BadImageExitsThree) {
  const fs::path dir = scratch("badimage");
  std::ofstream(dir / "bad.pgm", std::ios::binary) << "P5 2 2 255\nx";
  const CliRun r = cli("exp3 --input \"" + (dir / "bad.pgm").string() + "\" --out-dir \"" + (dir / "out").string() + "\"", dir);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.output.find("offset 12"), std::string::npos) << r.output;
  EXPECT_EQ(cli("exp3 --input \"" + (dir / "missing.pgm").string() + "\"", dir).exit_code, 3);
  std::ofstream(dir / "odd.pgm", std::ios::binary) << "P5 3 3 255\n012345678";
  EXPECT_EQ(cli("exp3 --input \"" + (dir / "odd.pgm").string() + "\" --out-dir \"" + (dir / "o2").string() + "\"", dir)
                .exit_code,
            2);
}

TEST(Cli, Exp3FromPgmInput) {
  const fs::path dir = scratch("exp3input");
  nshmc::Image img(32, 32, 40.0);
  for (std::size_t y = 8; y < 24; ++y)
    for (std::size_t x = 8; x < 24; ++x) img.at(x, y) = 160.0;
  nshmc::pgm_write(img, dir / "clean.pgm");
  const fs::path out = dir / "out";
  const CliRun r = cli("exp3 --input \"" + (dir / "clean.pgm").string() + "\" -n 30 --burn-in 10 --out-dir \"" +
                        out.string() + "\"",
                    dir);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  for (const char* f : {"noisy.pgm", "denoised.pgm", "metrics.csv", "chain.csv", "manifest.json"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  EXPECT_EQ(line_count(out / "chain.csv"), 31u);
}

TEST(Cli, ReplayIsBitIdentical) {
  const fs::path dir = scratch("replay");
  const fs::path out = dir / "exp1";
  ASSERT_EQ(cli("exp1 -n 3000 --checkpoint 500 --max-lag 20 --out-dir \"" + out.string() + "\"", dir).exit_code, 0);
  const std::string before = slurp(out / "mse_curve.csv");
  const fs::path replayed = dir / "exp1_again";
  const CliRun r = cli("replay \"" + (out / "manifest.json").string() + "\" --out \"" + replayed.string() + "\" --check", dir);
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("identical"), std::string::npos);
  EXPECT_EQ(slurp(replayed / "mse_curve.csv"), before);

  std::string manifest = slurp(out / "manifest.json");
  const auto at = manifest.find("\"digest\": \"");
  ASSERT_NE(at, std::string::npos);
  manifest.replace(at + 11, 16, "0123456789abcdef");
  std::ofstream(dir / "tampered.json", std::ios::binary) << manifest;
  EXPECT_EQ(cli("replay \"" + (dir / "tampered.json").string() + "\" --out \"" + (dir / "t").string() + "\" --check", dir)
                .exit_code,
            4);
  EXPECT_EQ(cli("replay \"" + (dir / "nothing.json").string() + "\"", dir).exit_code, 3);
}
