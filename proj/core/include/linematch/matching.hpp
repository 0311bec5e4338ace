#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace linematch {

/// A bijection between two point sets, as (left index, right index) pairs
/// referring to the caller's input order.
struct MatchingResult {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double cost = 0.0;
};

/// Min-cost perfect matching on the line: pair the k-th smallest of `p` with
/// the k-th smallest of `q`. Inputs need not be sorted. Throws SizeMismatch.
MatchingResult optimal_matching_cost(std::span<const double> p, std::span<const double> q);

/// Cost of the sorted pairing only; no allocation of pairs.
double sorted_pairing_cost(std::span<const double> p, std::span<const double> q);

/// Exhaustive minimum over all |p|! bijections. Throws TooLarge for |p| > 9.
MatchingResult brute_force_matching(std::span<const double> p, std::span<const double> q);

/// dp[i][j]: min cost of matching the i smallest requests into the j smallest
/// servers. Ties prefer the smaller server index.
class PartialOptTable {
 public:
  PartialOptTable(std::span<const double> requests, std::span<const double> sorted_servers);

  std::size_t requests() const { return rows_ - 1; }
  std::size_t servers() const { return cols_ - 1; }
  double at(std::size_t i, std::size_t j) const { return dp_[i * cols_ + j]; }
  double cost() const { return at(rows_ - 1, cols_ - 1); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> dp_;
};

/// OPT of serving `requests` with distinct servers out of `sorted_servers`.
/// Throws TooManyRequests.
double optimal_partial_cost(std::span<const double> requests, std::span<const double> sorted_servers);

/// Exhaustive minimum over injections requests -> servers. Small inputs only
/// (|servers| <= 10); used as an oracle.
double brute_force_partial_cost(std::span<const double> requests, std::span<const double> servers);

struct DpqBound {
  double delta = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// Removes p_g and q_h (1-based, sorted order) and compares the change in the
/// optimal matching cost with the removal bound.
DpqBound dpq_bound_check(std::span<const double> p, std::span<const double> q, std::size_t g,
                         std::size_t h);

}  // namespace linematch
