#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace linematch {

enum class IslandKind { Left, Stationary, Right };

std::string_view to_string(IslandKind kind);

/// A maximal interval of one kind. `lo`/`hi` may be infinite; a closed end
/// means the endpoint itself belongs to this interval.
struct Island {
  double lo;
  double hi;
  IslandKind kind;
  bool lo_closed;
  bool hi_closed;
};

/// Left/Stationary/Right decomposition of the whole line, ordered left to
/// right, disjoint, maximal.
class IslandPartition {
 public:
  IslandPartition() = default;
  explicit IslandPartition(std::vector<Island> intervals) : intervals_(std::move(intervals)) {}

  const std::vector<Island>& intervals() const { return intervals_; }
  IslandKind classify(double x) const;

  friend bool operator==(const IslandPartition& a, const IslandPartition& b);

 private:
  std::vector<Island> intervals_;
};

/// Islands induced by the sorted pairing of imaginary and available servers.
/// Throws SizeMismatch.
IslandPartition decompose_islands(std::span<const double> imaginary, std::span<const double> available);

/// Islands induced by an arbitrary bijection, given as (imaginary, available)
/// position pairs. A point is in a Left island when some pair has the
/// available end strictly left of it and the imaginary end strictly right;
/// Right symmetric. Endpoints shared with a Stationary piece are Stationary;
/// otherwise they go with the interval on their left.
IslandPartition partition_from_pairs(std::span<const std::pair<double, double>> pairs);

IslandKind classify_point(const IslandPartition& part, double x);

}  // namespace linematch
