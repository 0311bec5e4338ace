#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "linematch/error.hpp"
#include "linematch/matching.hpp"
#include "linematch/reductions.hpp"

using namespace linematch;

namespace {

Instance colocated_instance(std::mt19937_64& g) {
  const std::size_t n = 4 + g() % 12;
  std::vector<double> s;
  while (s.size() < n) {
    const double p = static_cast<double>(g() % 8) * 3.0;
    s.push_back(p);
  }
  std::sort(s.begin(), s.end());
  std::vector<double> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(s[g() % n]);
  return Instance{s, r};
}

Instance off_server_instance(std::mt19937_64& g) {
  const std::size_t n = 3 + g() % 10;
  std::vector<double> s{0.0};
  std::uniform_real_distribution<double> gap(1.0, 6.0);
  while (s.size() < n) s.push_back(s.back() + gap(g));
  std::uniform_real_distribution<double> where(-3.0, s.back() + 3.0);
  std::vector<double> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(where(g));
  return Instance{s, r};
}

}  // namespace

TEST(Rescale, SmallestGapBecomesOne) {
  RescaledInstance r = rescale_to_unit_gap(Instance{{0, 0.5, 2}, {0.5}});
  EXPECT_DOUBLE_EQ(r.instance.servers[1], 1.0);
  EXPECT_DOUBLE_EQ(r.instance.requests[0], 1.0);
  EXPECT_DOUBLE_EQ(r.map.invert(r.map.apply(3.7)), 3.7);
}

TEST(Lift, SpreadsDuplicates) {
  LiftedInstance l = lift_colocated(Instance{{0, 0, 5}, {0}}, 1.0 / 15.0);
  ASSERT_EQ(l.instance.servers.size(), 3u);
  EXPECT_EQ(l.instance.servers[0], 0.0);
  EXPECT_GT(l.instance.servers[1], 0.0);
  EXPECT_LE(l.instance.servers[1], 1.0 / 15.0);
  EXPECT_EQ(l.instance.servers[2], 5.0);
}

TEST(Lift, NoDuplicatesIsIdentity) {
  Instance inst{{0, 2, 5}, {2, 5}};
  EXPECT_EQ(lift_colocated(inst, 0.1).instance, inst);
}

TEST(Perturbation, BadParams) {
  std::vector<double> s{0, 0, 5};
  SeededChoices rng(1);
  EXPECT_THROW(PerturbationWrapper(s, 0.0, AlgorithmKind::Greedy, rng), Error);
}

TEST(Perturbation, RequestAtColocatedServersUsesCopies) {
  std::vector<double> s{0, 0, 5};
  SeededChoices rng(1);
  PerturbationWrapper w(s, 0.1, AlgorithmKind::Greedy, rng);
  const std::size_t a = w.serve(0.0);
  const std::size_t b = w.serve(0.0);
  EXPECT_NE(a, b);
  EXPECT_EQ(s[a], 0.0);
  EXPECT_EQ(s[b], 0.0);
}

TEST(Perturbation, InequalitiesHoldPerRun) {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = colocated_instance(g);
    for (auto k : {AlgorithmKind::Greedy, AlgorithmKind::ModifiedDoubledHarmonic}) {
      PerturbationAccounting acc = account_perturbation(inst, k, trial);
      EXPECT_TRUE(acc.online_holds()) << acc.on_b << " " << acc.on_a << " " << acc.n_epsilon;
      EXPECT_TRUE(acc.opt_holds()) << acc.opt_b << " " << acc.opt_a;
    }
  }
}

TEST(Snap, NearestLocation) {
  std::vector<double> s{0, 5};
  EXPECT_EQ(nearest_location(s, 2.4), 0.0);
  EXPECT_EQ(nearest_location(s, 2.5), 0.0);
  EXPECT_EQ(nearest_location(s, 2.6), 5.0);
  EXPECT_EQ(nearest_location(s, 5.0), 5.0);
}

TEST(Snap, InequalitiesHoldPerRun) {
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = off_server_instance(g);
    for (auto k : {AlgorithmKind::Greedy, AlgorithmKind::ModifiedDoubledHarmonic}) {
      SnapAccounting acc = account_snap(inst, k, trial);
      EXPECT_TRUE(acc.online_holds()) << acc.on_c << " " << acc.on_b << " " << acc.opt_c;
      EXPECT_TRUE(acc.opt_holds()) << acc.opt_c << " " << acc.opt_b;
    }
  }
}

TEST(ReducedRun, OriginalUnitsAndOpt) {
  std::mt19937_64 g(14);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = colocated_instance(g);
    inst.requests[0] += 0.3;
    ReducedRun rr = run_reduced(inst, AlgorithmKind::ModifiedDoubledHarmonic, trial, ReductionConfig{0.0, ReductionMode::Both});
    EXPECT_NEAR(rr.opt, optimal_partial_cost(inst.requests, inst.servers), 1e-9);
    double cost = 0.0;
    std::vector<int> used(inst.servers.size(), 0);
    for (std::size_t t = 0; t < rr.assignments.size(); ++t) {
      cost += std::abs(inst.servers[rr.assignments[t]] - inst.requests[t]);
      EXPECT_EQ(used[rr.assignments[t]]++, 0);
    }
    EXPECT_NEAR(rr.online_cost, cost, 1e-9);
    EXPECT_EQ(reduced_run_to_json(rr),
              reduced_run_to_json(run_reduced(inst, AlgorithmKind::ModifiedDoubledHarmonic, trial,
                                              ReductionConfig{0.0, ReductionMode::Both})));
  }
}
