#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace linematch {

/// Pseudo: gaps clamped below at Z/n^2 and cut to infinity at Z.
/// Raw: plain distances (the literal reading of some hand traces).
enum class PdMode { Pseudo, Raw };

/// Length assigned to one gap between adjacent points.
double pseudo_gap(double gap, double z, std::size_t n, PdMode mode = PdMode::Pseudo);

/// Pseudo-distance between servers i <= j (0-based) of a sorted server list.
/// Throws BadIndices when i > j or j is out of range, DomainError for z <= 0.
double pseudo_distance(std::span<const double> servers, std::size_t i, std::size_t j, double z,
                       std::size_t n);

/// Pseudo-distances from arbitrary points to servers under a fixed estimate.
/// A point strictly inside a gap splits it into two gaps that are measured
/// separately; a point on a server measures from that server.
class PseudoMetric {
 public:
  PseudoMetric(std::span<const double> sorted_servers, double z, PdMode mode = PdMode::Pseudo);

  double z() const { return z_; }
  double between(std::size_t i, std::size_t j) const;
  double from_point(double x, std::size_t server) const;

 private:
  std::span<const double> servers_;
  double z_;
  PdMode mode_;
};

struct NeighborProbs {
  double left;
  double right;
};

/// Inverse-proportional choice between two neighbours at pseudo-distances
/// `pd_left` and `pd_right`. Throws BothInfinite, or DomainError when both are
/// zero.
NeighborProbs neighbor_probs(double pd_left, double pd_right);

/// Same, but returns nullopt instead of throwing BothInfinite.
std::optional<NeighborProbs> try_neighbor_probs(double pd_left, double pd_right);

}  // namespace linematch
