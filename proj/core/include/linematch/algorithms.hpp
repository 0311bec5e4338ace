#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "linematch/islands.hpp"
#include "linematch/line_state.hpp"
#include "linematch/pseudo_distance.hpp"
#include "linematch/randomness.hpp"
#include "linematch/transcript.hpp"
#include "linematch/trigger.hpp"

namespace linematch {

enum class AlgorithmKind { Greedy, Harmonic, DoubledHarmonic, ModifiedDoubledHarmonic };

std::string_view to_string(AlgorithmKind kind);
/// Accepts "greedy", "harmonic", "dh", "mdh". Throws BadParams.
AlgorithmKind parse_algorithm(std::string_view name);

struct RunOptions {
  /// Store available/imaginary positions before every step.
  bool record_sets = false;
  PdMode pd_mode = PdMode::Pseudo;
};

/// Exact assignment law for one prospective request: (server index, probability).
struct AssignmentDistribution {
  std::vector<std::pair<std::size_t, double>> support;

  double probability_of(std::size_t server) const;
  double total() const;
};

/// Anything that irrevocably assigns requests to a fixed list of servers.
class Matcher {
 public:
  virtual ~Matcher() = default;
  virtual const std::vector<double>& servers() const = 0;
  /// Assigns a request at x and returns the chosen server index.
  virtual std::size_t serve(double x) = 0;
};

/// An algorithm over sorted, distinct servers that records a transcript.
class OnlineAlgorithm : public Matcher {
 public:
  virtual AlgorithmKind kind() const = 0;
  virtual const LineState& state() const = 0;
  const std::vector<double>& servers() const override { return state().servers(); }

  const std::vector<StepTrace>& steps() const { return steps_; }
  const std::vector<TriggerRecord>& triggers() const { return triggers_; }

 protected:
  std::vector<StepTrace> steps_;
  std::vector<TriggerRecord> triggers_;
};

/// Nearest available server, ties to the left. Throws NoAvailableServer.
std::size_t greedy_choice(const LineState& state, double x);

/// Harmonic's law: the first available server on each side, chosen with
/// probability inversely proportional to the raw distance.
AssignmentDistribution harmonic_distribution(const LineState& state, double x);

/// Probability that the imaginary neighbours (il, ir) of x are chosen right,
/// inversely to pseudo-distance; raw distances when both are infinite.
double imaginary_right_probability(const PseudoMetric& metric, const std::vector<double>& servers, double x,
                                   std::size_t il, std::size_t ir);

class Greedy final : public OnlineAlgorithm {
 public:
  explicit Greedy(std::span<const double> sorted_servers);
  AlgorithmKind kind() const override { return AlgorithmKind::Greedy; }
  const LineState& state() const override { return state_; }
  std::size_t serve(double x) override;

 private:
  LineState state_;
};

class Harmonic final : public OnlineAlgorithm {
 public:
  Harmonic(std::span<const double> sorted_servers, ChoiceSource& rng);
  AlgorithmKind kind() const override { return AlgorithmKind::Harmonic; }
  const LineState& state() const override { return state_; }
  std::size_t serve(double x) override;

 private:
  LineState state_;
  ChoiceSource* rng_;
};

/// One Doubled Harmonic step on request t (1-based) of `ctx`.
struct DhStepOutcome {
  std::size_t server = 0;
  std::size_t imaginary_target = 0;
  std::size_t corrective_target = 0;
  std::optional<double> p_right;
  const char* case_id = "";
  bool trigger = false;
  int z_exponent_before = 0;
  int z_exponent_after = 0;
  double opt = 0.0;
  std::size_t draws = 0;
  std::shared_ptr<const DhSimulation> adjustment;
};

DhStepOutcome dh_step(LineState& state, RunContext& ctx, std::size_t t, ChoiceSource& rng);

/// Fresh Doubled Harmonic run on the first `len` requests of `ctx`, drawing
/// from `rng`. Nested adjustments come from `ctx`.
DhSimulation simulate_dh(RunContext& ctx, std::size_t len, ChoiceSource& rng);

class DoubledHarmonic final : public OnlineAlgorithm {
 public:
  DoubledHarmonic(std::span<const double> sorted_servers, ChoiceSource& rng, RunOptions options = {});
  AlgorithmKind kind() const override { return AlgorithmKind::DoubledHarmonic; }
  const LineState& state() const override { return state_; }
  std::size_t serve(double x) override;

  RunContext& context() { return ctx_; }

 private:
  RunContext ctx_;
  LineState state_;
  RunOptions options_;
};

/// Everything Modified Doubled Harmonic needs to decide a request at x.
struct MdhPlan {
  const char* case_id = "";
  bool trigger = false;
  double opt_with = 0.0;
  std::size_t left_server = 0;
  std::size_t right_server = 0;
  /// Probability of right_server; equal servers mean a forced choice.
  double p_right = 0.0;
  IslandKind island = IslandKind::Stationary;
  std::optional<double> y_left;
  std::optional<double> y_right;
  std::optional<double> mimic_point;
};

struct MdhDecision {
  MdhPlan plan;
  std::size_t server = 0;
  std::optional<std::size_t> gamma;
  std::size_t draws = 0;
};

class ModifiedDoubledHarmonic final : public OnlineAlgorithm {
 public:
  ModifiedDoubledHarmonic(std::span<const double> sorted_servers, ChoiceSource& rng, RunOptions options = {});
  ModifiedDoubledHarmonic(const ModifiedDoubledHarmonic&) = delete;
  ModifiedDoubledHarmonic& operator=(const ModifiedDoubledHarmonic&) = delete;

  AlgorithmKind kind() const override { return AlgorithmKind::ModifiedDoubledHarmonic; }
  const LineState& state() const override { return state_; }
  std::size_t serve(double x) override;

  /// Pure analysis of a request at x in the current state.
  MdhPlan plan(double x) const;
  AssignmentDistribution next_distribution(double x) const;
  /// Samples the assignment (and s_gamma) without changing the state.
  MdhDecision decide(double x, ChoiceSource& rng) const;
  void commit(double x, const MdhDecision& decision);

  /// Case 4 probability of moving right for a non-triggering request at y,
  /// which must lie strictly between two available servers. Throws
  /// DomainError otherwise.
  double nontrigger_right(double y) const;

  bool is_trigger(double x) const;
  /// Valid until the next commit.
  TriggerContext trigger_context(std::size_t left_server, std::size_t right_server) const;
  const IslandPartition& islands() const;
  const OptProfile& profile() const;
  ChoiceSource& rng() { return *rng_; }
  RunContext& context() { return ctx_; }

 private:
  struct Cache;
  const Cache& cache() const;
  double right_rule(double y) const;

  RunContext ctx_;
  LineState state_;
  ChoiceSource* rng_;
  RunOptions options_;
  double phase_carry_ = 0.0;
  mutable std::shared_ptr<Cache> cache_;
};

std::unique_ptr<OnlineAlgorithm> make_algorithm(AlgorithmKind kind, std::span<const double> sorted_servers,
                                                ChoiceSource& rng, RunOptions options = {});

}  // namespace linematch
