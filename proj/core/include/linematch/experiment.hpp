#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "linematch/algorithms.hpp"
#include "linematch/generators.hpp"
#include "linematch/reductions.hpp"

namespace linematch {

struct ExperimentConfig {
  std::vector<GeneratorKind> generators{GeneratorKind::Uniform};
  std::vector<std::size_t> sizes{16};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::vector<AlgorithmKind> algorithms{AlgorithmKind::ModifiedDoubledHarmonic};
  ReductionConfig reduction;
  /// Empty means standard output.
  std::string output;
  /// "json" or "csv".
  std::string format = "json";
};

/// Throws BadParams on an invalid config (no trials, n < 2, unknown names).
void validate_config(const ExperimentConfig& cfg);

/// Reads {"generators", "sizes", "trials", "seed", "algorithms",
/// "reduction": {"mode", "epsilon"}, "output", "format"}; missing keys keep
/// their defaults. Throws Parse or BadParams.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

struct PhaseSummary {
  std::size_t index = 0;
  int z_exponent = 0;
  std::size_t requests = 0;       // |B_i|
  double assigned_cost = 0.0;     // |W_i|
  double trigger_cost = 0.0;      // |e_i|, 0 for phase 0
};

struct TrialRow {
  std::size_t trial = 0;
  std::string generator;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t digest = 0;
  std::string algorithm;
  double online_cost = 0.0;
  double opt = 0.0;
  double ratio = 1.0;
  std::size_t triggers = 0;
  std::vector<PhaseSummary> phases;
};

struct Aggregate {
  std::string generator;
  std::string algorithm;
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Least-squares fit of mean ratio against log2 n.
struct SlopeFit {
  std::string generator;
  std::string algorithm;
  double slope = 0.0;
  double intercept = 0.0;
};

struct Report {
  ExperimentConfig config;
  std::vector<TrialRow> rows;
  std::vector<Aggregate> aggregates;
  std::vector<SlopeFit> fits;
};

/// Seed of one trial, derived from the config seed and the trial's position.
std::uint64_t trial_seed(std::uint64_t seed, GeneratorKind kind, std::size_t n, std::size_t trial);

Report run_experiment(const ExperimentConfig& cfg);

/// Aggregates and fits recomputed from rows.
void summarize(Report& report);

std::string report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

}  // namespace linematch
