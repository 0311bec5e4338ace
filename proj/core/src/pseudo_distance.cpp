#include "linematch/pseudo_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linematch/error.hpp"

namespace linematch {
namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double pseudo_gap(double gap, double z, std::size_t n, PdMode mode) {
  if (mode == PdMode::Raw) return gap;
  if (gap >= z) return kInf;
  const double floor_len = z / (static_cast<double>(n) * static_cast<double>(n));
  if (gap <= floor_len) return floor_len;
  return gap;
}

double pseudo_distance(std::span<const double> servers, std::size_t i, std::size_t j, double z,
                       std::size_t n) {
  if (i > j || j >= servers.size()) throw Error(ErrorCode::BadIndices, "need i <= j < |servers|");
  if (!(z > 0.0)) throw Error(ErrorCode::DomainError, "estimate must be positive");
  if (n == 0) throw Error(ErrorCode::DomainError, "n must be at least 1");
  double total = 0.0;
  for (std::size_t h = i; h < j; ++h) {
    total += pseudo_gap(servers[h + 1] - servers[h], z, n);
  }
  return total;
}

PseudoMetric::PseudoMetric(std::span<const double> sorted_servers, double z, PdMode mode)
    : servers_(sorted_servers), z_(z), mode_(mode) {}

double PseudoMetric::between(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  double total = 0.0;
  const std::size_t n = servers_.size();
  for (std::size_t h = i; h < j; ++h) {
    total += pseudo_gap(servers_[h + 1] - servers_[h], z_, n, mode_);
    if (total == kInf) break;
  }
  return total;
}

double PseudoMetric::from_point(double x, std::size_t server) const {
  const std::size_t n = servers_.size();
  auto it = std::lower_bound(servers_.begin(), servers_.end(), x);
  const auto k = static_cast<std::size_t>(it - servers_.begin());  // first server >= x
  if (it != servers_.end() && *it == x) return between(k, server);
  if (server >= k) {
    // x lies left of servers_[k]
    return pseudo_gap(servers_[k] - x, z_, n, mode_) + between(k, server);
  }
  // x lies right of servers_[k - 1]
  return pseudo_gap(x - servers_[k - 1], z_, n, mode_) + between(server, k - 1);
}

std::optional<NeighborProbs> try_neighbor_probs(double pd_left, double pd_right) {
  const bool li = std::isinf(pd_left);
  const bool ri = std::isinf(pd_right);
  if (li && ri) return std::nullopt;
  if (li) return NeighborProbs{0.0, 1.0};
  if (ri) return NeighborProbs{1.0, 0.0};
  const double sum = pd_left + pd_right;
  if (!(sum > 0.0)) throw Error(ErrorCode::DomainError, "both pseudo-distances are zero");
  return NeighborProbs{pd_right / sum, pd_left / sum};
}

NeighborProbs neighbor_probs(double pd_left, double pd_right) {
  auto p = try_neighbor_probs(pd_left, pd_right);
  if (!p) throw Error(ErrorCode::BothInfinite, "both neighbours are at infinite pseudo-distance");
  return *p;
}

}  // namespace linematch
