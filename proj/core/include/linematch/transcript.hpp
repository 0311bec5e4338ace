#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace linematch {

/// Terms of g(t) around one non-triggering step: g moves from
/// d_before + carried to d_after + carried + d_sigma - d_gamma.
struct PotentialRecord {
  double d_before = 0.0;
  double d_after = 0.0;
  double d_sigma = 0.0;
  double d_gamma = 0.0;
  double g_before = 0.0;
  double g_after = 0.0;
};

/// Available and imaginary positions just before a step.
struct SetSnapshot {
  std::vector<double> available;
  std::vector<double> imaginary;
};

struct StepTrace {
  std::size_t t = 0;
  double request = 0.0;
  std::string case_id;
  std::size_t server = 0;
  double server_position = 0.0;
  double cost = 0.0;
  bool trigger = false;
  int z_exponent_before = 0;
  int z_exponent_after = 0;
  double opt_to_date = 0.0;
  /// s_gamma(t) for MDH, the imaginary-move target for DH.
  std::optional<std::size_t> imaginary_server;
  std::optional<std::size_t> corrective_target;
  std::optional<double> y_left;
  std::optional<double> y_right;
  std::optional<double> mimic_point;
  std::optional<double> p_right;
  std::size_t draws = 0;
  std::optional<PotentialRecord> potential;
  std::optional<SetSnapshot> before;
};

/// Ledger entries attached to a triggering request rho_i.
struct TriggerRecord {
  std::size_t t = 0;
  std::size_t assigned_server = 0;  // e_i
  double assigned_cost = 0.0;
  std::size_t imaginary_move = 0;  // f_i
  double imaginary_cost = 0.0;
  std::vector<std::size_t> simulated_assignments;  // Y_i
  std::vector<std::size_t> simulated_imaginary_moves;
  std::vector<std::optional<double>> simulated_p_right;
  double simulated_cost = 0.0;  // |Y_i|
};

/// Requests served while the estimate is Z_i = 10^z_exponent.
struct PhaseRecord {
  std::size_t index = 0;
  int z_exponent = 0;
  std::size_t tau = 0;
  std::vector<std::size_t> steps;  // t of each request in B_i
  double assigned_cost = 0.0;      // |W_i|
  double imaginary_cost = 0.0;     // |X_i|
  std::optional<TriggerRecord> opening_trigger;  // rho_i, for i >= 1
};

struct RunTranscript {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<double> servers;
  std::vector<double> requests;
  std::vector<StepTrace> steps;
  std::vector<PhaseRecord> phases;
  double online_cost = 0.0;
  double opt = 0.0;
  double ratio = 1.0;
};

/// Splits steps into phases at triggering requests. `triggers` must be in
/// arrival order and match the triggering steps.
std::vector<PhaseRecord> build_phases(const std::vector<StepTrace>& steps,
                                      const std::vector<TriggerRecord>& triggers,
                                      const std::vector<double>& servers);

/// Online cost over OPT, or 1 when OPT is zero.
double competitive_ratio(double online_cost, double opt);

std::string transcript_to_json(const RunTranscript& tr);
std::string transcript_to_csv(const RunTranscript& tr);

}  // namespace linematch
