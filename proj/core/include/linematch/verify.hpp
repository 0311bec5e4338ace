#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "linematch/algorithms.hpp"
#include "linematch/transcript.hpp"

namespace linematch {

/// Result of one executable check. worst_margin is the smallest slack seen
/// (negative on a violation, +inf when nothing was compared).
struct CheckReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  std::vector<std::string> details;

  bool passed() const { return violations == 0; }
  void observe(double margin, const std::string& what);
  void merge(const CheckReport& other);
};

CheckReport make_report(std::string name);

std::string reports_to_json(const std::vector<CheckReport>& reports);

/// Pr[right] non-decreasing across (left, right) for an arbitrary neighbour
/// algorithm given as a function, sampled on `grid` + 1 evenly spaced points
/// plus each breakpoint and its two neighbours at distance 1e-7 * width.
CheckReport check_monotonicity(const std::string& name, const std::function<double(double)>& p_right, double left,
                               double right, std::span<const double> breakpoints, std::size_t grid = 1000);

/// Monotonicity of MDH between the interval-th and (interval+1)-th available
/// servers (0-based), with every analytic breakpoint sampled, plus constancy
/// of Pr[right] over trigger points sharing (y_left, y_right, side of m).
CheckReport check_monotonicity(const ModifiedDoubledHarmonic& mdh, std::size_t interval, std::size_t grid = 1000);

/// Random reachable MDH states (n <= max_n) checked on every interval.
CheckReport check_monotonicity_states(std::size_t states, std::uint64_t seed, std::size_t grid = 1000,
                                      std::size_t max_n = 32);

/// g(t) non-increasing within each phase of an MDH transcript. Uses the set
/// snapshots when present to recompute D independently.
CheckReport check_potential(const RunTranscript& tr);

/// check_potential over `runs` random MDH runs with n <= max_n.
CheckReport check_potential_runs(std::size_t runs, std::uint64_t seed, std::size_t max_n = 32);

/// Facts (a)-(d) about N on `samples` constrained random triples each.
CheckReport check_n_facts(std::size_t samples, std::uint64_t seed);

/// Counterexample quantities on servers 0, 4, 11, 31, computed by exhaustive branch enumeration.
struct DhCounterexample {
  double p_s3_given_s1 = 0.0;
  double p_s3_given_s2 = 0.0;
  double p_s4_given_s2 = 0.0;
  double adjustment_p_right = 0.0;         // p_right of r_2 inside the adjustment
  double adjustment_right_mass = 0.0;      // Pr[simulated r_2 -> s_3 | condition]
  double raw_p_s3_given_s2 = 0.0;
  double raw_p_s4_given_s2 = 0.0;
  double expected_p_s4_given_s2 = 0.0;     // (4/11)(6.25/33.25)
  double expected_raw_p_s4_given_s2 = 0.0; // (4/11)(4/31)
  std::size_t leaves = 0;
};

DhCounterexample dh_counterexample_numbers();
CheckReport reproduce_dh_counterexample();

/// Sorted pairing vs brute force, partial DP vs brute force, and the
/// removal bound, `trials` cases each.
CheckReport check_matching_oracles(std::size_t trials, std::uint64_t seed);

/// Monte Carlo frequency of decide() against next_distribution() on random
/// (state, x) pairs, within `sigmas` standard deviations.
CheckReport check_distribution_consistency(std::size_t cases, std::size_t samples, std::uint64_t seed,
                                           double sigmas = 3.0);

struct VerifyConfig {
  std::uint64_t seed = 1;
  std::size_t monotonicity_states = 50;
  std::size_t grid = 1000;
  std::size_t potential_runs = 1000;
  std::size_t n_fact_samples = 100000;
  std::size_t oracle_trials = 200;
  std::size_t distribution_cases = 20;
  std::size_t distribution_samples = 20000;
};

std::vector<CheckReport> run_verify_battery(const VerifyConfig& cfg);

}  // namespace linematch
