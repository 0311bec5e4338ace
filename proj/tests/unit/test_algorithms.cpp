#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "linematch/algorithms.hpp"
#include "linematch/error.hpp"
#include "linematch/generators.hpp"
#include "linematch/matching.hpp"
#include "linematch/run.hpp"
#include "linematch/trigger.hpp"

using namespace linematch;

namespace {

const std::vector<double> kGaps4720{0, 4, 11, 31};

// MDH driven through a random prefix of a generated instance.
struct ReachedState {
  std::vector<double> servers;
  std::unique_ptr<SeededChoices> rng;
  std::unique_ptr<ModifiedDoubledHarmonic> mdh;
};

ReachedState reach(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  const auto kind = static_cast<GeneratorKind>(g() % 4);
  const std::size_t n = 4 + g() % 12;
  Instance inst = generate_instance(kind, n, seed);
  ReachedState s;
  s.servers = distinct_servers(inst.servers);
  s.rng = std::make_unique<SeededChoices>(seed);
  s.mdh = std::make_unique<ModifiedDoubledHarmonic>(s.servers, *s.rng);
  const std::size_t prefix = 1 + g() % (n - 2);
  for (std::size_t t = 0; t < prefix; ++t) s.mdh->serve(inst.requests[t]);
  return s;
}

}  // namespace

TEST(Greedy, NearestTiesLeft) {
  std::vector<double> s{0, 11};
  LineState st(s);
  EXPECT_EQ(greedy_choice(st, 4.0), 0u);
  EXPECT_EQ(greedy_choice(st, 5.5), 0u);
  EXPECT_EQ(greedy_choice(st, 11.0), 1u);
  EXPECT_EQ(greedy_choice(st, 7.0), 1u);
}

TEST(Greedy, NoAvailableServer) {
  std::vector<double> s{0};
  Greedy g(s);
  g.serve(0.0);
  EXPECT_THROW(g.serve(0.0), Error);
}

TEST(Harmonic, InverseDistanceLaw) {
  std::vector<double> s{0, 4, 11};
  LineState st(s);
  st.take(1);
  AssignmentDistribution d = harmonic_distribution(st, 4.0);
  EXPECT_NEAR(d.probability_of(0), 7.0 / 11.0, 1e-15);
  EXPECT_NEAR(d.probability_of(2), 4.0 / 11.0, 1e-15);
  EXPECT_NEAR(d.total(), 1.0, 1e-15);
  AssignmentDistribution at = harmonic_distribution(st, 11.0);
  EXPECT_DOUBLE_EQ(at.probability_of(2), 1.0);
}

TEST(Algorithms, ParseNames) {
  for (auto k : {AlgorithmKind::Greedy, AlgorithmKind::Harmonic, AlgorithmKind::DoubledHarmonic,
                 AlgorithmKind::ModifiedDoubledHarmonic})
    EXPECT_EQ(parse_algorithm(to_string(k)), k);
  EXPECT_THROW(parse_algorithm("wfa"), Error);
}

TEST(DoubledHarmonic, FirstRequestAtServerStaysThere) {
  SeededChoices rng(1);
  DoubledHarmonic dh(kGaps4720, rng);
  EXPECT_EQ(dh.serve(4.0), 1u);
  EXPECT_FALSE(dh.state().imaginary(1));
  EXPECT_TRUE(dh.state().imaginary(0));
  EXPECT_TRUE(dh.state().imaginary(2));
  EXPECT_FALSE(dh.state().z_set());
}

TEST(DoubledHarmonic, SecondRequestSetsEstimateAndMovesRightWithFourElevenths) {
  const int trials = 100000;
  int right = 0;
  for (int seed = 0; seed < trials; ++seed) {
    RunTranscript tr = run(Instance{kGaps4720, {4, 4}}, AlgorithmKind::DoubledHarmonic, seed);
    const StepTrace& s = tr.steps[1];
    ASSERT_TRUE(s.trigger);
    ASSERT_EQ(s.z_exponent_after, 1);
    ASSERT_TRUE(s.imaginary_server.has_value());
    if (*s.imaginary_server == 2) ++right;
  }
  EXPECT_NEAR(static_cast<double>(right) / trials, 4.0 / 11.0, 0.005);
}

TEST(DoubledHarmonic, MonteCarloMatchesBranchEnumeration) {
  const Instance inst{kGaps4720, {4, 4, 4}};
  auto leaves = enumerate_branches([&](ChoiceSource& c) { return run(inst, AlgorithmKind::DoubledHarmonic, c).online_cost; });
  double mass = 0.0, mean = 0.0, second = 0.0;
  for (const auto& b : leaves) {
    mass += b.probability;
    mean += b.probability * b.value;
    second += b.probability * b.value * b.value;
  }
  EXPECT_NEAR(mass, 1.0, 1e-12);
  const int trials = 20000;
  double sum = 0.0;
  for (int seed = 0; seed < trials; ++seed) sum += run(inst, AlgorithmKind::DoubledHarmonic, seed).online_cost;
  const double sd = std::sqrt(std::max(0.0, second - mean * mean) / trials);
  EXPECT_NEAR(sum / trials, mean, 4.0 * sd + 1e-12);
}

TEST(DoubledHarmonic, ImaginarySetDistributionMatchesEnumeration) {
  const Instance inst{kGaps4720, {11, 4, 31}};
  auto leaves = enumerate_branches([&](ChoiceSource& c) {
    std::vector<double> s = inst.servers;
    DoubledHarmonic dh(s, c);
    for (double r : inst.requests) dh.serve(r);
    return dh.state().imaginary_indices();
  });
  std::map<std::vector<std::size_t>, double> exact;
  for (const auto& b : leaves) exact[b.value] += b.probability;
  std::map<std::vector<std::size_t>, int> seen;
  const int trials = 20000;
  for (int seed = 0; seed < trials; ++seed) {
    SeededChoices c(seed);
    std::vector<double> s = inst.servers;
    DoubledHarmonic dh(s, c);
    for (double r : inst.requests) dh.serve(r);
    ++seen[dh.state().imaginary_indices()];
  }
  for (const auto& [set, p] : exact) {
    const double sd = std::sqrt(p * (1 - p) / trials);
    EXPECT_NEAR(static_cast<double>(seen[set]) / trials, p, 4.0 * sd + 1e-12);
  }
  for (const auto& [set, count] : seen) EXPECT_TRUE(exact.count(set)) << count;
}

TEST(ModifiedDoubledHarmonic, RequestAtAvailableServer) {
  SeededChoices rng(2);
  ModifiedDoubledHarmonic mdh(kGaps4720, rng);
  AssignmentDistribution d = mdh.next_distribution(11.0);
  ASSERT_EQ(d.support.size(), 1u);
  EXPECT_EQ(d.support[0].first, 2u);
  EXPECT_EQ(mdh.plan(11.0).case_id, std::string("1"));
}

TEST(ModifiedDoubledHarmonic, OutsideAvailableRange) {
  SeededChoices rng(2);
  ModifiedDoubledHarmonic mdh(kGaps4720, rng);
  mdh.serve(0.0);
  EXPECT_EQ(mdh.plan(-1.0).case_id, std::string("2"));
  EXPECT_EQ(mdh.serve(-1.0), 1u);
  mdh.serve(31.0);
  EXPECT_EQ(mdh.plan(40.0).case_id, std::string("3"));
  EXPECT_EQ(mdh.serve(40.0), 2u);
}

TEST(ModifiedDoubledHarmonic, DistinctRequestsCostNothing) {
  RunTranscript tr = run(Instance{kGaps4720, {31, 0, 11, 4}}, AlgorithmKind::ModifiedDoubledHarmonic, 3);
  EXPECT_EQ(tr.online_cost, 0.0);
  EXPECT_EQ(tr.opt, 0.0);
  EXPECT_EQ(tr.ratio, 1.0);
  for (const auto& s : tr.steps) EXPECT_FALSE(s.trigger);
  EXPECT_LE(tr.phases.size(), 1u);
}

TEST(ModifiedDoubledHarmonic, IslandCasesAreForced) {
  std::size_t left = 0, right = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    ReachedState s = reach(seed);
    const auto avail = s.mdh->state().available_indices();
    for (std::size_t i = 0; i + 1 < avail.size(); ++i) {
      const double a = s.servers[avail[i]], b = s.servers[avail[i + 1]];
      for (int k = 1; k < 40; ++k) {
        const double x = a + (b - a) * k / 40.0;
        const MdhPlan p = s.mdh->plan(x);
        const AssignmentDistribution d = s.mdh->next_distribution(x);
        EXPECT_NEAR(d.total(), 1.0, 1e-12);
        if (p.case_id == std::string("4a")) {
          ++left;
          EXPECT_DOUBLE_EQ(d.probability_of(avail[i]), 1.0);
        } else if (p.case_id == std::string("4b")) {
          ++right;
          EXPECT_DOUBLE_EQ(d.probability_of(avail[i + 1]), 1.0);
        }
      }
    }
  }
  EXPECT_GT(left, 0u);
  EXPECT_GT(right, 0u);
}

TEST(ModifiedDoubledHarmonic, ExpectedCostIsGapTimesN) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ReachedState s = reach(seed);
    const auto avail = s.mdh->state().available_indices();
    for (std::size_t i = 0; i + 1 < avail.size(); ++i) {
      const double a = s.servers[avail[i]], b = s.servers[avail[i + 1]];
      const double x = a + 0.37 * (b - a);
      const AssignmentDistribution d = s.mdh->next_distribution(x);
      const double p = d.probability_of(avail[i + 1]);
      double expected = 0.0;
      for (auto [j, q] : d.support) expected += q * std::abs(s.servers[j] - x);
      EXPECT_NEAR(expected, (b - a) * normalized_cost(linear_map(a, b, x), p), 1e-9 * (b - a));
    }
  }
}

TEST(ModifiedDoubledHarmonic, DecideFollowsNextDistribution) {
  ReachedState s = reach(17);
  const auto avail = s.mdh->state().available_indices();
  ASSERT_GE(avail.size(), 2u);
  const double x = 0.5 * (s.servers[avail[0]] + s.servers[avail[1]]);
  const AssignmentDistribution d = s.mdh->next_distribution(x);
  SeededChoices rng(99);
  const int trials = 100000;
  std::map<std::size_t, int> seen;
  for (int k = 0; k < trials; ++k) ++seen[s.mdh->decide(x, rng).server];
  for (auto [j, p] : d.support) {
    const double sd = std::sqrt(p * (1 - p) / trials);
    EXPECT_NEAR(static_cast<double>(seen[j]) / trials, p, 4.0 * sd + 1e-12);
  }
}

TEST(ModifiedDoubledHarmonic, NontriggerRightDomain) {
  SeededChoices rng(2);
  ModifiedDoubledHarmonic mdh(kGaps4720, rng);
  EXPECT_THROW(mdh.nontrigger_right(4.0), Error);
  EXPECT_THROW(mdh.nontrigger_right(-2.0), Error);
}

TEST(Run, DeterministicPerSeed) {
  Instance inst = generate_instance(GeneratorKind::Uniform, 24, 5);
  for (auto k : {AlgorithmKind::Harmonic, AlgorithmKind::DoubledHarmonic, AlgorithmKind::ModifiedDoubledHarmonic}) {
    EXPECT_EQ(transcript_to_json(run(inst, k, 8)), transcript_to_json(run(inst, k, 8)));
  }
}

TEST(Run, OnlineCostAtLeastOpt) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = generate_instance(static_cast<GeneratorKind>(seed % 4), 8 + seed % 10, seed);
    const double opt = optimal_partial_cost(inst.requests, distinct_servers(inst.servers));
    for (auto k : {AlgorithmKind::Greedy, AlgorithmKind::Harmonic, AlgorithmKind::DoubledHarmonic,
                   AlgorithmKind::ModifiedDoubledHarmonic}) {
      RunTranscript tr = run(inst, k, seed);
      EXPECT_NEAR(tr.opt, opt, 1e-9);
      EXPECT_GE(tr.online_cost, opt - 1e-9);
      if (opt > 0) { EXPECT_GE(tr.ratio, 1.0 - 1e-9); }
    }
  }
}

TEST(Run, CoLocatedServersNeedReduction) {
  EXPECT_THROW(run(Instance{{0, 0, 5}, {0}}, AlgorithmKind::Greedy, 1), Error);
}
