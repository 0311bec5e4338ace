#include <gtest/gtest.h>

#include <cmath>

#include "linematch/run.hpp"
#include "linematch/generators.hpp"
#include "linematch/verify.hpp"

using namespace linematch;

TEST(Counterexample, ExactProbabilities) {
  const DhCounterexample c = dh_counterexample_numbers();
  EXPECT_EQ(c.p_s3_given_s1, 1.0);
  EXPECT_LT(c.p_s3_given_s2, 1.0);
  EXPECT_NEAR(c.adjustment_p_right, 4.0 / 11.0, 1e-15);
  EXPECT_NEAR(c.adjustment_right_mass, 4.0 / 11.0, 1e-15);
  EXPECT_NEAR(c.p_s4_given_s2, (4.0 / 11.0) * (6.25 / 33.25), 1e-15);
  EXPECT_NEAR(c.raw_p_s4_given_s2, (4.0 / 11.0) * (4.0 / 31.0), 1e-15);
  EXPECT_TRUE(reproduce_dh_counterexample().passed());
}

TEST(Monotonicity, DetectsNonMonotoneFunction) {
  CheckReport bad = check_monotonicity("bad", [](double x) { return x < 0.5 ? 0.6 : 0.4; }, 0.0, 1.0, {}, 100);
  EXPECT_FALSE(bad.passed());
  CheckReport good = check_monotonicity("good", [](double x) { return x * x; }, 0.0, 1.0, {}, 100);
  EXPECT_TRUE(good.passed());
}

TEST(Monotonicity, EndpointsAreForced) {
  std::vector<double> s{0, 4, 11, 31};
  SeededChoices rng(1);
  ModifiedDoubledHarmonic mdh(s, rng);
  mdh.serve(4.0);
  mdh.serve(4.0);
  const auto avail = mdh.state().available_indices();
  for (std::size_t i = 0; i + 1 < avail.size(); ++i) {
    EXPECT_DOUBLE_EQ(mdh.next_distribution(s[avail[i]]).probability_of(avail[i]), 1.0);
    EXPECT_DOUBLE_EQ(mdh.next_distribution(s[avail[i + 1]]).probability_of(avail[i + 1]), 1.0);
    EXPECT_TRUE(check_monotonicity(mdh, i, 500).passed());
  }
}

TEST(Monotonicity, RandomStates) {
  EXPECT_TRUE(check_monotonicity_states(40, 3, 200).passed());
}

TEST(Potential, RandomRuns) {
  CheckReport r = check_potential_runs(300, 4);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.trials, 0u);
}

TEST(Potential, EmptyTranscriptPasses) {
  RunTranscript tr;
  EXPECT_TRUE(check_potential(tr).passed());
}

TEST(Potential, FlagsTamperedTranscript) {
  Instance inst = generate_instance(GeneratorKind::Uniform, 16, 2);
  RunTranscript tr = run(inst, AlgorithmKind::ModifiedDoubledHarmonic, 2, RunOptions{true, PdMode::Pseudo});
  ASSERT_TRUE(check_potential(tr).passed());
  bool tampered = false;
  for (StepTrace& s : tr.steps) {
    if (s.potential && !s.trigger) {
      s.potential->g_after = s.potential->g_before + 1.0;
      tampered = true;
      break;
    }
  }
  ASSERT_TRUE(tampered);
  EXPECT_FALSE(check_potential(tr).passed());
}

TEST(NFacts, Sampled) { EXPECT_TRUE(check_n_facts(5000, 6).passed()); }

TEST(Oracles, Sampled) { EXPECT_TRUE(check_matching_oracles(50, 7).passed()); }

TEST(DistributionConsistency, Sampled) { EXPECT_TRUE(check_distribution_consistency(5, 20000, 8, 4.0).passed()); }

TEST(Battery, JsonHasEveryCheck) {
  VerifyConfig cfg;
  cfg.monotonicity_states = 3;
  cfg.grid = 50;
  cfg.potential_runs = 10;
  cfg.n_fact_samples = 100;
  cfg.oracle_trials = 5;
  cfg.distribution_cases = 2;
  cfg.distribution_samples = 500;
  auto reports = run_verify_battery(cfg);
  EXPECT_EQ(reports.size(), 6u);
  const std::string js = reports_to_json(reports);
  for (const auto& r : reports) EXPECT_NE(js.find(r.name), std::string::npos);
  EXPECT_EQ(js, reports_to_json(run_verify_battery(cfg)));
}
