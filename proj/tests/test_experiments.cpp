#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nshmc/errors.hpp"
#include "nshmc/experiments.hpp"
#include "nshmc/manifest.hpp"

using namespace nshmc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(NSHMC_TEST_SCRATCH) / "experiments" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST(ParseTarget, Forms) {
  const TargetSpec a = parse_target("gg");
  EXPECT_EQ(a.gg.p, 1.0);
  EXPECT_EQ(a.gg.gamma, 1.0);
  EXPECT_EQ(a.dimension, 1u);
  const TargetSpec b = parse_target("gg:p=1.5,gamma=2,dim=3");
  EXPECT_EQ(b.gg.p, 1.5);
  EXPECT_EQ(b.gg.gamma, 2.0);
  EXPECT_EQ(b.dimension, 3u);
  EXPECT_EQ(parse_target(format_target(b)).gg.p, 1.5);
  EXPECT_EQ(format_target(b), "gg:p=1.5,gamma=2,dim=3");
}

TEST(ParseTarget, Rejects) {
  for (const char* bad : {"foo", "gg:q=1", "gg:p=0.5", "gg:p=abc", "gg:dim=0", "gg:gamma=-1", "gg:p", "gg:p=1,p=2"})
    EXPECT_THROW(parse_target(bad), UsageError) << bad;
  try {
    parse_target("foo");
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("gg"), std::string::npos);
  }
}

TEST(ParseSampler, Forms) {
  const SamplerSpec a = parse_sampler("nshmc2:eps=0.05,lf=10");
  EXPECT_TRUE(std::holds_alternative<NsHmcScheme2>(a.kind));
  ASSERT_TRUE(a.leapfrog.has_value());
  EXPECT_EQ(a.leapfrog->epsilon, 0.05);
  EXPECT_EQ(a.leapfrog->steps, 10u);
  EXPECT_TRUE(std::holds_alternative<NsHmcScheme1>(parse_sampler("nshmc1").kind));
  const SamplerSpec rw = parse_sampler("rwmh:std=2.5");
  EXPECT_EQ(std::get<RwMh>(rw.kind).proposal_std, 2.5);
  EXPECT_FALSE(rw.leapfrog.has_value());
  EXPECT_EQ(std::get<IndepMh>(parse_sampler("mh").kind).proposal_std, 1.0);
  EXPECT_EQ(format_sampler(a), "nshmc2:eps=0.050000000000000003,lf=10");
  EXPECT_EQ(parse_sampler(format_sampler(a)).leapfrog->epsilon, 0.05);
  EXPECT_EQ(format_sampler(rw), "rwmh:std=2.5");
}

TEST(ParseSampler, Rejects) {
  for (const char* bad : {"hmc", "nshmc2:std=1", "rwmh:eps=0.1", "nshmc1:lf=0", "nshmc2:eps=-1", "mh:std=0", ""})
    EXPECT_THROW(parse_sampler(bad), UsageError) << bad;
}

TEST(FormatReal, SeventeenDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(-2.5e-300), "-2.5e-300");
  EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_real(std::nan("")), "nan");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-310}) EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v);
}

TEST(Exp2, SettleIndex) {
  EXPECT_EQ(settle_index({5, 4, 3, 2, 1}, 2.5), 3u);
  EXPECT_EQ(settle_index({5, 1, 3, 1, 1}, 2.0), 3u);
  EXPECT_EQ(settle_index({1, 1, 1}, 2.0), 0u);
  EXPECT_FALSE(settle_index({1, 1, 3}, 2.0).has_value());
}

TEST(Exp2, ExpectedDirectMse) {
  // Two equally likely cells of width 1: each height has variance q(1-q)/(n w^2).
  Histogram ref({0.0, 2.0, 2}, 1);
  ref.add(0.5);
  ref.add(1.5);
  EXPECT_NEAR(expected_direct_mse(ref, 100), 0.25 / 100.0, 1e-15);
}

TEST(Exp1, SmallRunShapes) {
  Exp1Params p;
  p.iterations = 2000;
  p.checkpoint = 500;
  p.max_lag = 10;
  const Exp1Result r = exp1_compute(p);
  EXPECT_EQ(r.samplers, (std::vector<std::string>{"nshmc2", "rwmh", "mh"}));
  EXPECT_EQ(r.checkpoints, (std::vector<std::size_t>{500, 1000, 1500, 2000}));
  for (std::size_t s = 0; s < 3; ++s) {
    EXPECT_EQ(r.mse[s].size(), 4u);
    EXPECT_EQ(r.acf[s].size(), 11u);
    EXPECT_EQ(r.acf[s][0], 1.0);
    EXPECT_GT(r.acceptance[s], 0.0);
    EXPECT_LT(r.acceptance[s], 1.0);
  }
  const fs::path dir = scratch("exp1");
  const auto files = write_exp1(r, dir);
  ASSERT_EQ(files.size(), 3u);
  const auto mse = lines_of(dir / "mse_curve.csv");
  EXPECT_EQ(mse.front(), "iteration,nshmc2,rwmh,mh");
  EXPECT_EQ(mse.size(), 5u);
  EXPECT_EQ(lines_of(dir / "acf.csv").size(), 12u);
}

TEST(Exp1, ParamValidation) {
  Exp1Params p;
  p.p = 0.5;
  EXPECT_THROW(exp1_compute(p), UsageError);
  p = {};
  p.burn_in = p.iterations;
  EXPECT_THROW(exp1_compute(p), UsageError);
}

TEST(Exp2, SmallRun) {
  Exp2Params p;
  p.iterations = 2000;
  p.reference_samples = 100000;
  const Exp2Result r = exp2_compute(p);
  EXPECT_EQ(r.samplers, (std::vector<std::string>{"nshmc2", "rwmh"}));
  EXPECT_EQ(r.checkpoints.size(), 40u);
  EXPECT_EQ(r.floor.size(), 40u);
  EXPECT_GT(r.threshold, 0.0);
  for (std::size_t s = 0; s < 2; ++s) {
    EXPECT_LE(r.converged_at[s], p.iterations);
    if (!r.converged[s]) {
      EXPECT_EQ(r.converged_at[s], p.iterations);
    }
  }
  EXPECT_EQ(r.gap(), static_cast<long long>(r.converged_at[1]) - static_cast<long long>(r.converged_at[0]));
  Exp2Params bad;
  bad.dimension = 5;
  EXPECT_THROW(exp2_compute(bad), UsageError);
}

TEST(Exp3, NoiselessIsNearPerfect) {
  Exp3Params p;
  p.synthetic_size = 32;
  p.noise_var = 0.0;
  p.iterations = 40;
  p.burn_in = 20;
  const Exp3Result r = exp3_compute(p);
  EXPECT_GT(r.snr_denoised, 60.0);
  EXPECT_EQ(r.snr_noisy, std::numeric_limits<double>::infinity());
}

TEST(Sample, ComputeAndWrite) {
  SampleParams p;
  p.target = "gg:p=1,gamma=1,dim=2";
  p.sampler = "rwmh:std=1";
  p.iterations = 300;
  p.burn_in = 100;
  const SampleResult r = sample_compute(p);
  EXPECT_GT(r.acceptance, 0.0);
  EXPECT_LT(r.acceptance, 1.0);
  EXPECT_TRUE(std::isfinite(r.lag1_acf));
  const fs::path dir = scratch("sample");
  write_sample(r, dir / "chain.csv");
  const auto lines = lines_of(dir / "chain.csv");
  EXPECT_EQ(lines.front(), "iteration,x0,x1,accepted");
  EXPECT_EQ(lines.size(), 201u);
}

TEST(Params, JsonRoundTrip) {
  Exp3Params p;
  p.noise_var = 12.5;
  p.seed = 99;
  p.input = "scene.pgm";
  const Exp3Params q = nlohmann::json(p).get<Exp3Params>();
  EXPECT_EQ(q.noise_var, 12.5);
  EXPECT_EQ(q.seed, 99u);
  EXPECT_EQ(q.input, "scene.pgm");
  EXPECT_EQ(nlohmann::json(q), nlohmann::json(p));
  Exp1Params e1;
  e1.epsilon = 0.123;
  EXPECT_EQ(nlohmann::json(e1).get<Exp1Params>().epsilon, 0.123);
}

TEST(Manifest, DigestAndRoundTrip) {
  const fs::path dir = scratch("manifest");
  {
    std::ofstream(dir / "empty.bin", std::ios::binary);
    std::ofstream(dir / "a.bin", std::ios::binary) << "a";
  }
  // FNV-1a 64-bit reference values.
  EXPECT_EQ(file_digest(dir / "empty.bin"), "cbf29ce484222325");
  EXPECT_EQ(file_digest(dir / "a.bin"), "af63dc4c8601ec8c");
  EXPECT_THROW(file_digest(dir / "missing.bin"), IoError);

  RunManifest m;
  m.command = "exp1";
  m.params = Exp1Params{};
  m.seed = 7;
  m.out = "somewhere";
  m.outputs = {{"a.bin", "af63dc4c8601ec8c", 1}};
  m.duration_seconds = 0.5;
  write_manifest(m, dir / "m.json");
  const RunManifest back = read_manifest(dir / "m.json");
  EXPECT_EQ(back.command, "exp1");
  EXPECT_EQ(back.params, m.params);
  EXPECT_EQ(back.outputs.size(), 1u);
  EXPECT_EQ(back.outputs[0].digest, "af63dc4c8601ec8c");
  EXPECT_TRUE(compare_outputs(m, back).empty());

  std::ofstream(dir / "broken.json") << "{\"command\": 1";
  EXPECT_THROW(read_manifest(dir / "broken.json"), UsageError);
  EXPECT_THROW(read_manifest(dir / "absent.json"), IoError);
}

TEST(Manifest, RunCommandReplaysIdentically) {
  const fs::path dir = scratch("replay");
  SampleParams p;
  p.iterations = 200;
  const RunOutcome first = run_command("sample", p, dir / "a.csv");
  EXPECT_TRUE(fs::exists(dir / "a.csv.manifest.json"));
  const RunManifest recorded = read_manifest(dir / "a.csv.manifest.json");
  const RunOutcome second = run_command(recorded.command, recorded.params, dir / "b.csv");
  EXPECT_TRUE(compare_outputs(recorded, second.manifest).empty());
  EXPECT_EQ(first.summary, second.summary);

  RunManifest tampered = recorded;
  tampered.outputs[0].digest = "0000000000000000";
  EXPECT_EQ(compare_outputs(tampered, second.manifest).size(), 1u);
  EXPECT_THROW(run_command("exp9", p, dir / "c"), UsageError);
}
