#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "linematch/commands.hpp"
#include "linematch/error.hpp"
#include "linematch/experiment.hpp"
#include "linematch/generators.hpp"
#include "linematch/instance.hpp"
#include "linematch/run.hpp"

using namespace linematch;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "linematch_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

TEST(Generators, DeterministicAndStrictValid) {
  for (auto k : {GeneratorKind::Uniform, GeneratorKind::Clustered, GeneratorKind::GeometricGaps,
                 GeneratorKind::HarmonicAdversary}) {
    for (std::size_t n : {2u, 4u, 17u, 64u}) {
      Instance a = generate_instance(k, n, 9);
      EXPECT_EQ(instance_to_json(a), instance_to_json(generate_instance(k, n, 9)));
      EXPECT_EQ(a.servers.size(), n);
      EXPECT_EQ(a.requests.size(), n);
      EXPECT_NO_THROW(validate_instance(a, true));
    }
    EXPECT_THROW(generate_instance(k, 1, 0), Error);
    EXPECT_EQ(parse_generator(to_string(k)), k);
  }
}

TEST(Generators, GeometricGaps) {
  Instance inst = generate_instance(GeneratorKind::GeometricGaps, 10, 3);
  for (std::size_t i = 1; i < inst.servers.size(); ++i)
    EXPECT_DOUBLE_EQ(inst.servers[i] - inst.servers[i - 1], std::ldexp(1.0, static_cast<int>(i) - 1));
  EXPECT_DOUBLE_EQ(inst.servers.back() - inst.servers.front(), std::ldexp(1.0, 9) - 1);
}

TEST(Generators, AdversaryHurtsGreedyNotOpt) {
  double small = 0, large = 0, opt_large = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    small += run(generate_instance(GeneratorKind::HarmonicAdversary, 8, seed), AlgorithmKind::Greedy, 0).ratio;
    RunTranscript tr = run(generate_instance(GeneratorKind::HarmonicAdversary, 32, seed), AlgorithmKind::Greedy, 0);
    large += tr.ratio;
    opt_large = std::max(opt_large, tr.opt);
  }
  EXPECT_GT(large, 2.0 * small);
  EXPECT_LT(opt_large, 10.0);
}

TEST(Experiment, RowsAndAggregatesAgree) {
  ExperimentConfig cfg;
  cfg.generators = {GeneratorKind::Uniform, GeneratorKind::GeometricGaps};
  cfg.sizes = {8, 16};
  cfg.trials = 4;
  cfg.seed = 3;
  cfg.algorithms = {AlgorithmKind::Greedy, AlgorithmKind::ModifiedDoubledHarmonic};
  Report r = run_experiment(cfg);
  EXPECT_EQ(r.rows.size(), 2u * 2u * 4u * 2u);
  std::map<std::tuple<std::string, std::string, std::size_t>, std::pair<double, double>> acc;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const TrialRow& row = r.rows[i];
    if (i > 0) { EXPECT_LE(r.rows[i - 1].trial, row.trial); }
    EXPECT_GE(row.online_cost, row.opt - 1e-9);
    if (row.opt > 0) { EXPECT_GE(row.ratio, 1.0 - 1e-9); }
    auto& a = acc[{row.generator, row.algorithm, row.n}];
    a.first += row.ratio / cfg.trials;
    a.second = std::max(a.second, row.ratio);
  }
  ASSERT_EQ(r.aggregates.size(), acc.size());
  for (const Aggregate& a : r.aggregates) {
    auto [mean, mx] = acc.at({a.generator, a.algorithm, a.n});
    EXPECT_NEAR(a.mean_ratio, mean, 1e-12);
    EXPECT_EQ(a.max_ratio, mx);
  }
  EXPECT_EQ(r.fits.size(), 4u);
  EXPECT_EQ(report_to_json(r), report_to_json(run_experiment(cfg)));
}

TEST(Experiment, SlopeFitOnLinearData) {
  Report r;
  for (std::size_t n : {16u, 32u, 64u}) {
    TrialRow row;
    row.generator = "g";
    row.algorithm = "a";
    row.n = n;
    row.ratio = 1.0 + 0.5 * std::log2(static_cast<double>(n));
    r.rows.push_back(row);
  }
  summarize(r);
  ASSERT_EQ(r.fits.size(), 1u);
  EXPECT_NEAR(r.fits[0].slope, 0.5, 1e-12);
  EXPECT_NEAR(r.fits[0].intercept, 1.0, 1e-12);
}

TEST(Experiment, ZeroOptRatioIsOne) {
  EXPECT_EQ(competitive_ratio(0.0, 0.0), 1.0);
  RunTranscript tr = run(Instance{{0, 1, 2}, {2, 0}}, AlgorithmKind::ModifiedDoubledHarmonic, 1);
  EXPECT_EQ(tr.ratio, 1.0);
}

TEST(Experiment, ConfigValidation) {
  EXPECT_THROW(config_from_json("{\"trials\": 0}"), Error);
  EXPECT_THROW(config_from_json("{\"sizes\": [1]}"), Error);
  EXPECT_THROW(config_from_json("{\"generators\": [\"zipf\"]}"), Error);
  EXPECT_THROW(config_from_json("not json"), Error);
  ExperimentConfig cfg = config_from_json("{\"sizes\": [8, 16], \"trials\": 2, \"algorithms\": [\"dh\"]}");
  EXPECT_EQ(cfg.sizes, (std::vector<std::size_t>{8, 16}));
  EXPECT_EQ(config_from_json(config_to_json(cfg)).trials, 2u);
}

TEST(Experiment, ReductionConfigUsesWrappers) {
  ExperimentConfig cfg;
  cfg.sizes = {8};
  cfg.trials = 2;
  cfg.reduction.mode = ReductionMode::Both;
  Report r = run_experiment(cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const TrialRow& row : r.rows) EXPECT_GE(row.online_cost, row.opt - 1e-9);
}

TEST(Commands, RunAndSweepAreByteIdentical) {
  const auto inst = scratch("inst.json");
  write(inst, instance_to_json(generate_instance(GeneratorKind::Clustered, 20, 4)));
  RunCommand rc;
  rc.instance_path = inst.string();
  rc.seed = 6;
  CommandOutput a = run_command(rc), b = run_command(rc);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.text, b.text);
  rc.format = "csv";
  EXPECT_EQ(run_command(rc).text.rfind("t,request,case,server", 0), 0u);

  const auto cfg = scratch("cfg.json");
  write(cfg, "{\"generators\": [\"uniform\"], \"sizes\": [8], \"trials\": 3, \"seed\": 2}");
  SweepCommand sc;
  sc.config_path = cfg.string();
  CommandOutput s1 = sweep_command(sc), s2 = sweep_command(sc);
  EXPECT_EQ(s1.exit_code, 0);
  EXPECT_EQ(s1.text, s2.text);
  sc.format = "csv";
  EXPECT_EQ(sweep_command(sc).text.rfind("trial,generator,n,seed,digest", 0), 0u);
}

TEST(Commands, ErrorsBecomeExitCodes) {
  RunCommand rc;
  rc.instance_path = scratch("missing.json").string();
  std::filesystem::remove(rc.instance_path);
  CommandOutput out = run_command(rc);
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_NE(out.diagnostics.find("Io"), std::string::npos);

  const auto inst = scratch("offgrid.json");
  write(inst, "{\"servers\": [0, 2], \"requests\": [1]}");
  rc.instance_path = inst.string();
  rc.strict = true;
  EXPECT_EQ(run_command(rc).exit_code, 2);
  rc.strict = false;
  EXPECT_EQ(run_command(rc).exit_code, 0);
}

TEST(Commands, CounterexampleAndGen) {
  CommandOutput c = counterexample_command();
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_NE(c.text.find("\"monotone\": false"), std::string::npos);
  GenCommand g;
  g.kind = GeneratorKind::GeometricGaps;
  g.n = 5;
  Instance inst = instance_from_json(gen_command(g).text);
  EXPECT_EQ(inst.servers.size(), 5u);
}
