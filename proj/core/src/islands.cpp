#include "linematch/islands.hpp"

#include <algorithm>
#include <limits>

#include "linematch/error.hpp"
#include "linematch/matching.hpp"

namespace linematch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Atom {
  double lo;
  double hi;
  bool is_point;
  IslandKind kind;
};

}  // namespace

std::string_view to_string(IslandKind kind) {
  switch (kind) {
    case IslandKind::Left: return "left";
    case IslandKind::Stationary: return "stationary";
    case IslandKind::Right: return "right";
  }
  return "?";
}

IslandKind IslandPartition::classify(double x) const {
  // First interval whose upper end reaches x.
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Island& isl, double v) { return isl.hi < v; });
  if (it == intervals_.end()) return intervals_.empty() ? IslandKind::Stationary : intervals_.back().kind;
  if (it->hi == x && !it->hi_closed) ++it;
  return it == intervals_.end() ? IslandKind::Stationary : it->kind;
}

bool operator==(const IslandPartition& a, const IslandPartition& b) {
  if (a.intervals_.size() != b.intervals_.size()) return false;
  for (std::size_t i = 0; i < a.intervals_.size(); ++i) {
    const Island& x = a.intervals_[i];
    const Island& y = b.intervals_[i];
    if (x.lo != y.lo || x.hi != y.hi || x.kind != y.kind || x.lo_closed != y.lo_closed ||
        x.hi_closed != y.hi_closed) {
      return false;
    }
  }
  return true;
}

IslandPartition partition_from_pairs(std::span<const std::pair<double, double>> pairs) {
  std::vector<double> breaks;
  breaks.reserve(2 * pairs.size());
  for (const auto& [imag, avail] : pairs) {
    breaks.push_back(imag);
    breaks.push_back(avail);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  if (breaks.empty()) {
    return IslandPartition({Island{-kInf, kInf, IslandKind::Stationary, false, false}});
  }

  // Open pieces alternate with breakpoints: piece_0, b_0, piece_1, ..., b_m, piece_{m+1}.
  // Piece k is (b_{k-1}, b_k); a pair spanning [b_a, b_c] crosses pieces a+1..c.
  const std::size_t pieces = breaks.size() + 1;
  std::vector<int> left_cover(pieces + 1, 0);
  std::vector<int> right_cover(pieces + 1, 0);
  auto index_of = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), v) - breaks.begin());
  };
  for (const auto& [imag, avail] : pairs) {
    if (imag == avail) continue;
    const std::size_t a = index_of(std::min(imag, avail));
    const std::size_t c = index_of(std::max(imag, avail));
    auto& cover = imag > avail ? left_cover : right_cover;
    cover[a + 1] += 1;
    cover[c + 1] -= 1;
  }
  std::vector<Atom> atoms;
  atoms.reserve(2 * breaks.size() + 1);
  int lc = 0;
  int rc = 0;
  for (std::size_t k = 0; k < pieces; ++k) {
    lc += left_cover[k];
    rc += right_cover[k];
    if (lc > 0 && rc > 0) {
      throw Error(ErrorCode::DomainError, "bijection crosses a point in both directions");
    }
    const IslandKind kind = lc > 0 ? IslandKind::Left : rc > 0 ? IslandKind::Right : IslandKind::Stationary;
    const double lo = k == 0 ? -kInf : breaks[k - 1];
    const double hi = k == breaks.size() ? kInf : breaks[k];
    atoms.push_back(Atom{lo, hi, false, kind});
    if (k < breaks.size()) atoms.push_back(Atom{breaks[k], breaks[k], true, IslandKind::Stationary});
  }
  for (std::size_t i = 1; i + 1 < atoms.size(); i += 2) {
    const IslandKind before = atoms[i - 1].kind;
    const IslandKind after = atoms[i + 1].kind;
    if (before == after) {
      atoms[i].kind = before;
    } else if (before == IslandKind::Stationary || after == IslandKind::Stationary) {
      atoms[i].kind = IslandKind::Stationary;
    } else {
      atoms[i].kind = before;
    }
  }

  std::vector<Island> out;
  for (const Atom& a : atoms) {
    if (!out.empty() && out.back().kind == a.kind) {
      out.back().hi = a.hi;
      out.back().hi_closed = a.is_point;
      continue;
    }
    out.push_back(Island{a.lo, a.hi, a.kind, a.is_point, a.is_point});
  }
  return IslandPartition(std::move(out));
}

IslandPartition decompose_islands(std::span<const double> imaginary, std::span<const double> available) {
  const MatchingResult m = optimal_matching_cost(imaginary, available);
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(m.pairs.size());
  for (const auto& [i, a] : m.pairs) pairs.emplace_back(imaginary[i], available[a]);
  return partition_from_pairs(pairs);
}

IslandKind classify_point(const IslandPartition& part, double x) { return part.classify(x); }

}  // namespace linematch
