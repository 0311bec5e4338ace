#include "linematch/generators.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "linematch/error.hpp"
#include "linematch/randomness.hpp"

namespace linematch {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Instance uniform_instance(std::size_t n, std::mt19937_64& rng) {
  Instance inst;
  double pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    inst.servers.push_back(pos);
    pos += uniform(rng, 1.0, 10.0);
  }
  for (std::size_t i = 0; i < n; ++i) inst.requests.push_back(inst.servers[pick(rng, n)]);
  return inst;
}

Instance clustered_instance(std::size_t n, std::mt19937_64& rng) {
  Instance inst;
  std::vector<std::size_t> group_start;
  double pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 8 == 0) {
      group_start.push_back(i);
      if (i > 0) pos += uniform(rng, 20.0, 200.0);
    } else {
      pos += uniform(rng, 1.0, 2.0);
    }
    inst.servers.push_back(pos);
  }
  group_start.push_back(n);
  const std::size_t groups = group_start.size() - 1;
  const std::size_t hot = pick(rng, groups);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t g = uniform(rng, 0.0, 1.0) < 0.7 ? hot : pick(rng, groups);
    const std::size_t lo = group_start[g];
    const std::size_t hi = group_start[g + 1];
    inst.requests.push_back(inst.servers[lo + pick(rng, hi - lo)]);
  }
  return inst;
}

Instance geometric_instance(std::size_t n, std::mt19937_64& rng) {
  Instance inst;
  double pos = 0.0;
  double gap = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    inst.servers.push_back(pos);
    pos += gap;
    gap *= 2.0;
  }
  for (std::size_t i = 0; i < n; ++i) inst.requests.push_back(inst.servers[pick(rng, n)]);
  return inst;
}

Instance adversary_instance(std::size_t n, std::mt19937_64& rng) {
  Instance inst;
  const double leftmost = 0.0;
  inst.servers.push_back(leftmost);
  double pos = 1.5;
  inst.servers.push_back(pos);
  while (inst.servers.size() < n) {
    const double theta = uniform(rng, 0.05, 0.3);
    pos += std::max(1.0, (pos - leftmost) * (1.0 - theta));
    inst.servers.push_back(pos);
  }
  inst.requests.push_back(inst.servers[1]);
  for (std::size_t i = 1; i < n; ++i) inst.requests.push_back(inst.servers[i]);
  return inst;
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Uniform: return "uniform";
    case GeneratorKind::Clustered: return "clustered";
    case GeneratorKind::GeometricGaps: return "geometric";
    case GeneratorKind::HarmonicAdversary: return "adversary";
  }
  return "?";
}

GeneratorKind parse_generator(std::string_view name) {
  if (name == "uniform") return GeneratorKind::Uniform;
  if (name == "clustered") return GeneratorKind::Clustered;
  if (name == "geometric") return GeneratorKind::GeometricGaps;
  if (name == "adversary") return GeneratorKind::HarmonicAdversary;
  throw Error(ErrorCode::BadParams, "unknown generator '" + std::string(name) + "'");
}

Instance generate_instance(GeneratorKind kind, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::BadParams, "generators need n >= 2");
  std::mt19937_64 rng(splitmix64(seed ^ (static_cast<std::uint64_t>(kind) << 56)));
  switch (kind) {
    case GeneratorKind::Uniform: return uniform_instance(n, rng);
    case GeneratorKind::Clustered: return clustered_instance(n, rng);
    case GeneratorKind::GeometricGaps: return geometric_instance(n, rng);
    case GeneratorKind::HarmonicAdversary: return adversary_instance(n, rng);
  }
  throw Error(ErrorCode::BadParams, "unknown generator");
}

}  // namespace linematch
