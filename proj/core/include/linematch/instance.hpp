#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace linematch {

/// Servers on the real line plus requests in arrival order.
struct Instance {
  std::vector<double> servers;
  std::vector<double> requests;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct ValidatedInstance {
  Instance instance;
  std::vector<std::string> warnings;
};

/// Sorts servers (with a warning) and enforces the counting rule. In strict
/// mode also enforces distinct server positions at least 1 apart and requests
/// located on servers.
ValidatedInstance validate_instance(Instance inst, bool strict);

/// True when every adjacent pair of servers is at least `min_gap` apart.
bool has_min_gap(const std::vector<double>& sorted_servers, double min_gap);

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

/// FNV-1a over the IEEE bit patterns of servers then requests.
std::uint64_t instance_digest(const Instance& inst);

}  // namespace linematch
