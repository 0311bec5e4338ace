#include "linematch/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "linematch/error.hpp"

namespace linematch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> argsort(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return idx;
}

void require_same_size(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::SizeMismatch,
                std::to_string(p.size()) + " vs " + std::to_string(q.size()) + " points");
  }
}

}  // namespace

MatchingResult optimal_matching_cost(std::span<const double> p, std::span<const double> q) {
  require_same_size(p, q);
  const auto ip = argsort(p);
  const auto iq = argsort(q);
  MatchingResult out;
  out.pairs.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    out.pairs.emplace_back(ip[k], iq[k]);
    out.cost += std::abs(p[ip[k]] - q[iq[k]]);
  }
  return out;
}

double sorted_pairing_cost(std::span<const double> p, std::span<const double> q) {
  require_same_size(p, q);
  std::vector<double> a(p.begin(), p.end());
  std::vector<double> b(q.begin(), q.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double cost = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) cost += std::abs(a[k] - b[k]);
  return cost;
}

MatchingResult brute_force_matching(std::span<const double> p, std::span<const double> q) {
  require_same_size(p, q);
  if (p.size() > 9) throw Error(ErrorCode::TooLarge, "brute force limited to 9 points");
  std::vector<std::size_t> perm(q.size());
  std::iota(perm.begin(), perm.end(), 0);
  MatchingResult best;
  best.cost = kInf;
  do {
    double c = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) c += std::abs(p[k] - q[perm[k]]);
    if (c < best.cost) {
      best.cost = c;
      best.pairs.clear();
      for (std::size_t k = 0; k < p.size(); ++k) best.pairs.emplace_back(k, perm[k]);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (p.empty()) best.cost = 0.0;
  return best;
}

PartialOptTable::PartialOptTable(std::span<const double> requests,
                                 std::span<const double> sorted_servers)
    : rows_(requests.size() + 1), cols_(sorted_servers.size() + 1), dp_(rows_ * cols_, kInf) {
  std::vector<double> r(requests.begin(), requests.end());
  std::sort(r.begin(), r.end());
  for (std::size_t j = 0; j < cols_; ++j) dp_[j] = 0.0;
  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      const double skip = dp_[i * cols_ + j - 1];
      const double use = dp_[(i - 1) * cols_ + j - 1] + std::abs(r[i - 1] - sorted_servers[j - 1]);
      dp_[i * cols_ + j] = use < skip ? use : skip;
    }
  }
}

double optimal_partial_cost(std::span<const double> requests, std::span<const double> sorted_servers) {
  if (requests.size() > sorted_servers.size()) {
    throw Error(ErrorCode::TooManyRequests,
                std::to_string(requests.size()) + " requests for " +
                    std::to_string(sorted_servers.size()) + " servers");
  }
  return PartialOptTable(requests, sorted_servers).cost();
}

double brute_force_partial_cost(std::span<const double> requests, std::span<const double> servers) {
  if (requests.size() > servers.size()) {
    throw Error(ErrorCode::TooManyRequests, "more requests than servers");
  }
  if (servers.size() > 10) throw Error(ErrorCode::TooLarge, "brute force limited to 10 servers");
  // Enumerate injections by depth-first search over unused servers.
  double best = kInf;
  std::vector<char> used(servers.size(), 0);
  auto dfs = [&](auto&& self, std::size_t i, double acc) -> void {
    if (acc >= best) return;
    if (i == requests.size()) {
      best = acc;
      return;
    }
    for (std::size_t s = 0; s < servers.size(); ++s) {
      if (used[s]) continue;
      used[s] = 1;
      self(self, i + 1, acc + std::abs(requests[i] - servers[s]));
      used[s] = 0;
    }
  };
  dfs(dfs, 0, 0.0);
  return requests.empty() ? 0.0 : best;
}

DpqBound dpq_bound_check(std::span<const double> p, std::span<const double> q, std::size_t g,
                         std::size_t h) {
  require_same_size(p, q);
  const std::size_t m = p.size();
  if (g < 1 || h < 1 || g > m || h > m) {
    throw Error(ErrorCode::IndexOutOfRange, "g and h must lie in [1, |P|]");
  }
  std::vector<double> ps(p.begin(), p.end());
  std::vector<double> qs(q.begin(), q.end());
  std::sort(ps.begin(), ps.end());
  std::sort(qs.begin(), qs.end());

  const double before = sorted_pairing_cost(ps, qs);
  std::vector<double> pr = ps;
  std::vector<double> qr = qs;
  pr.erase(pr.begin() + static_cast<std::ptrdiff_t>(g - 1));
  qr.erase(qr.begin() + static_cast<std::ptrdiff_t>(h - 1));
  const double after = sorted_pairing_cost(pr, qr);

  const double pg = ps[g - 1], ph = ps[h - 1], qg = qs[g - 1], qh = qs[h - 1];
  DpqBound out;
  out.delta = after - before;
  out.bound = g <= h ? (ph - pg) - std::abs(ph - qh) : (qg - qh) - std::abs(qg - pg);
  out.holds = out.delta <= out.bound + kCostTolerance;
  return out;
}

}  // namespace linematch
