#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "linematch/pseudo_distance.hpp"
#include "linematch/randomness.hpp"

namespace linematch {

/// Smallest j with 10^j > value (value > 0).
int exponent_above(double value);
double pow10(int exponent);

/// Live state shared by Doubled Harmonic and Modified Doubled Harmonic over a
/// sorted list of distinct servers. Servers are referred to by index.
class LineState {
 public:
  explicit LineState(std::span<const double> sorted_servers);

  const std::vector<double>& servers() const { return servers_; }
  std::size_t size() const { return servers_.size(); }

  bool available(std::size_t i) const { return available_[i] != 0; }
  bool imaginary(std::size_t i) const { return imaginary_[i] != 0; }
  std::size_t available_count() const { return available_count_; }

  std::vector<std::size_t> available_indices() const;
  std::vector<std::size_t> imaginary_indices() const;
  std::vector<double> available_positions() const;
  std::vector<double> imaginary_positions() const;

  /// Server located exactly at x, if any.
  std::optional<std::size_t> server_at(double x) const;
  std::optional<std::size_t> available_at(double x) const;
  std::optional<std::size_t> imaginary_at(double x) const;
  /// First flagged server strictly left / right of x.
  std::optional<std::size_t> available_left(double x) const;
  std::optional<std::size_t> available_right(double x) const;
  std::optional<std::size_t> imaginary_left(double x) const;
  std::optional<std::size_t> imaginary_right(double x) const;

  /// Available server paired with imaginary server `i` in the sorted pairing.
  std::size_t partner_of_imaginary(std::size_t i) const;

  int z_exponent() const { return z_exponent_; }
  bool z_set() const { return z_set_; }
  double z() const { return pow10(z_exponent_); }
  void set_z_exponent(int e);

  double opt_to_date() const { return opt_to_date_; }
  void set_opt_to_date(double v) { opt_to_date_ = v; }

  void take(std::size_t i);
  void drop_imaginary(std::size_t i);
  void reset_imaginary(std::span<const std::size_t> free_servers);

 private:
  std::optional<std::size_t> scan_left(const std::vector<char>& flags, double x) const;
  std::optional<std::size_t> scan_right(const std::vector<char>& flags, double x) const;

  std::vector<double> servers_;
  std::vector<char> available_;
  std::vector<char> imaginary_;
  std::size_t available_count_;
  int z_exponent_ = 0;
  bool z_set_ = false;
  double opt_to_date_ = 0.0;
};

/// Outcome of a from-scratch Doubled Harmonic run on a request prefix.
struct DhSimulation {
  std::vector<std::size_t> assigned;
  std::vector<std::size_t> imaginary_moves;
  /// Probability the imaginary move went right; NaN when it was forced.
  std::vector<double> p_right;
  std::vector<std::size_t> free_servers;
  int z_exponent = 0;
  double cost = 0.0;
};

/// Data shared by a real run and every adjustment simulation it triggers:
/// the servers, the requests revealed so far, OPT of each prefix, and one
/// memoized simulation per prefix length drawing from its own child stream.
class RunContext {
 public:
  RunContext(std::vector<double> sorted_servers, PdMode mode, ChoiceSource& root);

  const std::vector<double>& servers() const { return servers_; }
  PdMode pd_mode() const { return mode_; }
  ChoiceSource& root() { return *root_; }

  const std::vector<double>& requests() const { return requests_; }
  void reveal(double x) { requests_.push_back(x); }

  /// OPT of the first `len` revealed requests.
  double opt(std::size_t len);
  /// Stores OPT of the next prefix computed by other means.
  void record_opt(std::size_t len, double value);

  /// Doubled Harmonic simulated on the first `len` requests.
  std::shared_ptr<const DhSimulation> simulation(std::size_t len);

 private:
  std::vector<double> servers_;
  PdMode mode_;
  ChoiceSource* root_;
  std::vector<double> requests_;
  std::vector<double> opt_{0.0};
  std::map<std::size_t, std::shared_ptr<const DhSimulation>> sims_;
};

}  // namespace linematch
