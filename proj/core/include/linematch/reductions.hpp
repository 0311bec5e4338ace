#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "linematch/algorithms.hpp"
#include "linematch/instance.hpp"
#include "linematch/transcript.hpp"

namespace linematch {

enum class ReductionMode { None, PerturbColocated, SnapRequests, Both };

std::string_view to_string(ReductionMode mode);
/// Accepts "none", "perturb", "snap", "both". Throws BadParams.
ReductionMode parse_reduction(std::string_view name);

struct ReductionConfig {
  /// Perturbation window; 0 selects 1/(5n).
  double epsilon = 0.0;
  ReductionMode mode = ReductionMode::None;
};

/// y = scale * x.
struct AffineMap {
  double scale = 1.0;

  double apply(double x) const { return scale * x; }
  double invert(double y) const { return y / scale; }
};

struct RescaledInstance {
  Instance instance;
  AffineMap map;
};

/// Scales so the smallest gap between distinct server locations is 1.
RescaledInstance rescale_to_unit_gap(const Instance& inst);

/// Servers with duplicates spread out: the k extra copies at a location p go
/// to p + j * epsilon / k for j = 1..k. Index i of `perturbed` stands for
/// index i of the sorted original list.
struct LiftedInstance {
  Instance instance;
  std::vector<double> original_servers;
  double epsilon = 0.0;
};

/// Requests are copied unchanged. Assumes distinct locations are at least
/// `epsilon` apart.
LiftedInstance lift_colocated(const Instance& inst, double epsilon);

/// Serves instances with co-located servers through an algorithm that needs
/// distinct servers. A request at a location holding an available server is
/// placed on the leftmost available perturbed copy there; any other request
/// is forwarded unchanged.
class PerturbationWrapper final : public Matcher {
 public:
  PerturbationWrapper(std::span<const double> sorted_servers, double epsilon, AlgorithmKind kind, ChoiceSource& rng,
                      RunOptions options = {});

  const std::vector<double>& servers() const override { return original_; }
  std::size_t serve(double x) override;

  const std::vector<double>& perturbed_servers() const { return perturbed_; }
  const std::vector<double>& simulated_requests() const { return simulated_; }
  const OnlineAlgorithm& inner() const { return *inner_; }

 private:
  std::vector<double> original_;
  std::vector<double> perturbed_;
  std::vector<char> taken_;
  std::vector<double> simulated_;
  std::unique_ptr<OnlineAlgorithm> inner_;
};

/// Forwards every request to the nearest server location (any availability,
/// ties to the left) and assigns whatever the inner matcher picks.
class SnapWrapper final : public Matcher {
 public:
  explicit SnapWrapper(std::unique_ptr<Matcher> inner);

  const std::vector<double>& servers() const override { return inner_->servers(); }
  std::size_t serve(double x) override;

  const std::vector<double>& simulated_requests() const { return simulated_; }
  const Matcher& inner() const { return *inner_; }

 private:
  std::unique_ptr<Matcher> inner_;
  std::vector<double> simulated_;
};

/// Nearest position in a sorted list, ties to the left.
double nearest_location(std::span<const double> sorted, double x);

/// Per-run quantities of the perturbation argument, in rescaled units.
struct PerturbationAccounting {
  double on_a = 0.0;
  double on_b = 0.0;
  double opt_a = 0.0;
  double opt_b = 0.0;
  double n_epsilon = 0.0;

  bool online_holds() const;
  bool opt_holds() const;
};

/// Runs B = perturbation(A) on an instance whose requests sit on server
/// locations; A is `kind` on the perturbed servers.
PerturbationAccounting account_perturbation(const Instance& inst, AlgorithmKind kind, std::uint64_t seed,
                                            double epsilon = 0.0);

/// Per-run quantities of the snapping argument.
struct SnapAccounting {
  double on_b = 0.0;
  double on_c = 0.0;
  double opt_b = 0.0;
  double opt_c = 0.0;

  bool online_holds() const;
  bool opt_holds() const;
};

/// Runs C = snap(B) with B = `kind` on distinct servers and arbitrary requests.
SnapAccounting account_snap(const Instance& inst, AlgorithmKind kind, std::uint64_t seed);

/// A full run through the configured wrappers, reported in original units.
struct ReducedRun {
  std::string algorithm;
  std::uint64_t seed = 0;
  ReductionMode mode = ReductionMode::None;
  double epsilon = 0.0;
  double scale = 1.0;
  Instance instance;
  std::vector<std::size_t> assignments;
  double online_cost = 0.0;
  double opt = 0.0;
  double ratio = 1.0;
  /// Inner algorithm's own transcript, in rescaled and perturbed coordinates.
  RunTranscript inner;
};

ReducedRun run_reduced(const Instance& inst, AlgorithmKind kind, std::uint64_t seed, const ReductionConfig& cfg,
                       RunOptions options = {});

std::string reduced_run_to_json(const ReducedRun& r);

}  // namespace linematch
