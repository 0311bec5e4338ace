#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace linematch {

/// OPT of a fixed set of prior requests plus one extra request at a variable
/// location x. With c_k the optimal cost of the prior requests on S without
/// s_k, OPT(prior + x) = min_k |x - s_k| + c_k, which is concave and piecewise
/// linear between adjacent servers.
class OptProfile {
 public:
  OptProfile(std::span<const double> prior, std::span<const double> sorted_servers);

  double prior_cost() const { return prior_cost_; }
  double cost_with(double x) const;
  const std::vector<double>& removal_costs() const { return removal_; }
  std::span<const double> servers() const { return servers_; }

  /// Open intervals around servers where an extra request keeps OPT below z,
  /// sorted by left end. Their union is the non-trigger set.
  std::vector<std::pair<double, double>> below(double z) const;

 private:
  std::vector<double> servers_;
  std::vector<double> removal_;
  double prior_cost_ = 0.0;
};

/// Trigger geometry for requests strictly between two adjacent available
/// servers `left` < `right`.
struct TriggerContext {
  const OptProfile* profile = nullptr;
  double z = 1.0;
  double left = 0.0;
  double right = 0.0;

  double midpoint() const { return 0.5 * (left + right); }
};

/// True iff OPT(prior + x) >= z. An infinite z never triggers.
bool is_trigger_point(const TriggerContext& ctx, double x);

struct TriggerBoundaries {
  double y_left;
  double y_right;
};

/// Closure points of the non-trigger set nearest to x on each side, clamped to
/// the enclosing available servers. Throws NotATrigger.
TriggerBoundaries trigger_boundaries(const TriggerContext& ctx, double x);

/// Every x in [ctx.left, ctx.right] where the trigger status can change.
std::vector<double> trigger_breakpoints(const TriggerContext& ctx);

/// N(alpha, gamma) = alpha (1 - gamma) + (1 - alpha) gamma. Throws DomainError
/// outside [0, 1].
double normalized_cost(double alpha, double gamma);

/// Position of x in (left, right) rescaled to (0, 1). Throws
/// DegenerateInterval unless left < right.
double linear_map(double left, double right, double x);

}  // namespace linematch
