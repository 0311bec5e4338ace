#include "linematch/instance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "linematch/error.hpp"

namespace linematch {

bool has_min_gap(const std::vector<double>& sorted_servers, double min_gap) {
  for (std::size_t i = 1; i < sorted_servers.size(); ++i) {
    if (sorted_servers[i] - sorted_servers[i - 1] < min_gap) return false;
  }
  return true;
}

ValidatedInstance validate_instance(Instance inst, bool strict) {
  ValidatedInstance out;
  for (double v : inst.servers) {
    if (!std::isfinite(v)) throw Error(ErrorCode::DomainError, "non-finite server position");
  }
  for (double v : inst.requests) {
    if (!std::isfinite(v)) throw Error(ErrorCode::DomainError, "non-finite request position");
  }
  if (!std::is_sorted(inst.servers.begin(), inst.servers.end())) {
    std::sort(inst.servers.begin(), inst.servers.end());
    out.warnings.emplace_back("UnsortedServers: servers were sorted");
  }
  if (inst.requests.size() > inst.servers.size()) {
    throw Error(ErrorCode::TooManyRequests,
                std::to_string(inst.requests.size()) + " requests for " +
                    std::to_string(inst.servers.size()) + " servers");
  }
  if (strict) {
    if (!has_min_gap(inst.servers, 1.0)) {
      throw Error(ErrorCode::MinGapViolation, "adjacent servers closer than 1");
    }
    for (double r : inst.requests) {
      if (!std::binary_search(inst.servers.begin(), inst.servers.end(), r)) {
        std::ostringstream os;
        os << "request at " << r << " is not on a server";
        throw Error(ErrorCode::RequestOffServer, os.str());
      }
    }
  }
  out.instance = std::move(inst);
  return out;
}

std::string instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["servers"] = inst.servers;
  j["requests"] = inst.requests;
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (!j.is_object() || !j.contains("servers") || !j.contains("requests")) {
    throw Error(ErrorCode::Parse, "instance needs \"servers\" and \"requests\" arrays");
  }
  Instance inst;
  try {
    inst.servers = j.at("servers").get<std::vector<double>>();
    inst.requests = j.at("requests").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  std::sort(inst.servers.begin(), inst.servers.end());
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << instance_to_json(inst);
}

std::uint64_t instance_digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (double s : inst.servers) mix(s);
  h ^= 0xffU;
  h *= 0x100000001b3ULL;
  for (double r : inst.requests) mix(r);
  return h;
}

}  // namespace linematch
