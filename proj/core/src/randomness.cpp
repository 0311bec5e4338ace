#include "linematch/randomness.hpp"

#include <string>

#include "linematch/error.hpp"

namespace linematch {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededChoices::SeededChoices(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

double SeededChoices::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool SeededChoices::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  ++draws_;
  return uniform() < p;
}

ChoiceSource& SeededChoices::child(std::uint64_t key) {
  auto it = children_.find(key);
  if (it == children_.end()) {
    const std::uint64_t child_seed = splitmix64(seed_ ^ splitmix64(key + 0x632be59bd9b4e019ULL));
    it = children_.emplace(key, std::make_unique<SeededChoices>(child_seed)).first;
  }
  return *it->second;
}

bool ScriptedChoices::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  if (pos_ == script_.size()) script_.push_back(false);
  const bool out = script_[pos_++];
  probability_ *= out ? p : 1.0 - p;
  return out;
}

void throw_too_many_branches(std::size_t max_leaves) {
  throw Error(ErrorCode::TooLarge, "more than " + std::to_string(max_leaves) + " branches");
}

}  // namespace linematch
