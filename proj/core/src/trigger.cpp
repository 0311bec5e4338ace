#include "linematch/trigger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linematch/error.hpp"
#include "linematch/matching.hpp"

namespace linematch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

OptProfile::OptProfile(std::span<const double> prior, std::span<const double> sorted_servers)
    : servers_(sorted_servers.begin(), sorted_servers.end()) {
  const std::size_t n = servers_.size();
  if (prior.size() > n) throw Error(ErrorCode::TooManyRequests, "more prior requests than servers");
  std::vector<double> r(prior.begin(), prior.end());
  std::sort(r.begin(), r.end());
  const std::size_t t = r.size();
  const std::size_t cols = n + 1;

  // fwd[i][j]: first i requests into first j servers.
  std::vector<double> fwd((t + 1) * cols, kInf);
  for (std::size_t j = 0; j <= n; ++j) fwd[j] = 0.0;
  for (std::size_t i = 1; i <= t; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      const double skip = fwd[i * cols + j - 1];
      const double take = fwd[(i - 1) * cols + j - 1] + std::abs(r[i - 1] - servers_[j - 1]);
      fwd[i * cols + j] = std::min(skip, take);
    }
  }
  // bwd[i][j]: requests i.. into servers j..
  std::vector<double> bwd((t + 1) * cols, kInf);
  for (std::size_t j = 0; j <= n; ++j) bwd[t * cols + j] = 0.0;
  for (std::size_t i = t; i-- > 0;) {
    for (std::size_t j = n; j-- > 0;) {
      if (n - j < t - i) continue;
      const double skip = bwd[i * cols + j + 1];
      const double take = bwd[(i + 1) * cols + j + 1] + std::abs(r[i] - servers_[j]);
      bwd[i * cols + j] = std::min(skip, take);
    }
  }
  prior_cost_ = fwd[t * cols + n];
  removal_.assign(n, kInf);
  for (std::size_t k = 0; k < n; ++k) {
    double best = kInf;
    for (std::size_t i = 0; i <= t; ++i) {
      best = std::min(best, fwd[i * cols + k] + bwd[i * cols + k + 1]);
    }
    removal_[k] = best;
  }
}

double OptProfile::cost_with(double x) const {
  double best = kInf;
  for (std::size_t k = 0; k < servers_.size(); ++k) {
    best = std::min(best, std::abs(x - servers_[k]) + removal_[k]);
  }
  return best;
}

std::vector<std::pair<double, double>> OptProfile::below(double z) const {
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < servers_.size(); ++k) {
    const double w = z - removal_[k];
    if (w > 0.0) out.emplace_back(servers_[k] - w, servers_[k] + w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_trigger_point(const TriggerContext& ctx, double x) {
  if (std::isinf(ctx.z)) return false;
  return ctx.profile->cost_with(x) >= ctx.z;
}

TriggerBoundaries trigger_boundaries(const TriggerContext& ctx, double x) {
  if (!is_trigger_point(ctx, x)) throw Error(ErrorCode::NotATrigger, "x is not a trigger point");
  TriggerBoundaries out{ctx.left, ctx.right};
  for (const auto& [lo, hi] : ctx.profile->below(ctx.z)) {
    // x lies outside every open interval, so each one is entirely left or right of x.
    if (hi <= x && hi > ctx.left) out.y_left = std::max(out.y_left, hi);
    if (lo >= x && lo < ctx.right) out.y_right = std::min(out.y_right, lo);
  }
  out.y_left = std::min(out.y_left, x);
  out.y_right = std::max(out.y_right, x);
  return out;
}

std::vector<double> trigger_breakpoints(const TriggerContext& ctx) {
  std::vector<double> out;
  if (std::isinf(ctx.z)) return out;
  for (const auto& [lo, hi] : ctx.profile->below(ctx.z)) {
    if (lo > ctx.left && lo < ctx.right) out.push_back(lo);
    if (hi > ctx.left && hi < ctx.right) out.push_back(hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double normalized_cost(double alpha, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::DomainError, "N expects alpha and gamma in [0, 1]");
  }
  return alpha * (1.0 - gamma) + (1.0 - alpha) * gamma;
}

double linear_map(double left, double right, double x) {
  if (!(left < right)) throw Error(ErrorCode::DegenerateInterval, "linear_map needs left < right");
  return (x - left) / (right - left);
}

}  // namespace linematch
