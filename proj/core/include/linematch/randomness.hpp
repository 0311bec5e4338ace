#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <vector>

namespace linematch {

/// Source of binary random decisions. Algorithms never touch an engine
/// directly, so the same code runs under Monte Carlo and under exhaustive
/// branch enumeration.
class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;

  /// True with probability `p`. p <= 0 and p >= 1 are decided without a draw.
  virtual bool bernoulli(double p) = 0;

  /// Stream reserved for the adjustment simulation of a given prefix length.
  virtual ChoiceSource& child(std::uint64_t key) = 0;

  /// Number of non-degenerate decisions taken so far on this source.
  virtual std::size_t draws() const = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// mt19937_64 stream with deterministic children keyed by (seed, key).
class SeededChoices final : public ChoiceSource {
 public:
  explicit SeededChoices(std::uint64_t seed);

  bool bernoulli(double p) override;
  ChoiceSource& child(std::uint64_t key) override;
  std::size_t draws() const override { return draws_; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::size_t draws_ = 0;
  std::map<std::uint64_t, std::unique_ptr<SeededChoices>> children_;
};

/// Follows a scripted prefix of outcomes and extends it with "false" choices;
/// children share the same script so a whole run (including simulations) is
/// one path through the decision tree.
class ScriptedChoices final : public ChoiceSource {
 public:
  explicit ScriptedChoices(std::vector<bool> script) : script_(std::move(script)) {}

  bool bernoulli(double p) override;
  ChoiceSource& child(std::uint64_t) override { return *this; }
  std::size_t draws() const override { return pos_; }

  const std::vector<bool>& script() const { return script_; }
  double probability() const { return probability_; }

 private:
  std::vector<bool> script_;
  std::size_t pos_ = 0;
  double probability_ = 1.0;
};

template <class T>
struct Branch {
  double probability;
  T value;
};

/// Runs `fn` once per leaf of its decision tree and returns every leaf with
/// its probability. Throws TooLarge past `max_leaves`.
template <class Fn>
auto enumerate_branches(Fn&& fn, std::size_t max_leaves = 1u << 20)
    -> std::vector<Branch<decltype(fn(std::declval<ChoiceSource&>()))>>;

void throw_too_many_branches(std::size_t max_leaves);

template <class Fn>
auto enumerate_branches(Fn&& fn, std::size_t max_leaves)
    -> std::vector<Branch<decltype(fn(std::declval<ChoiceSource&>()))>> {
  using T = decltype(fn(std::declval<ChoiceSource&>()));
  std::vector<Branch<T>> leaves;
  std::vector<bool> script;
  while (true) {
    ScriptedChoices source(script);
    T value = fn(source);
    leaves.push_back(Branch<T>{source.probability(), std::move(value)});
    if (leaves.size() > max_leaves) throw_too_many_branches(max_leaves);
    script = source.script();
    script.resize(source.draws());
    while (!script.empty() && script.back()) script.pop_back();
    if (script.empty()) break;
    script.back() = true;
  }
  return leaves;
}

}  // namespace linematch
