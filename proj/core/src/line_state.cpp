#include "linematch/line_state.hpp"

#include <algorithm>
#include <cmath>

#include "linematch/error.hpp"
#include "linematch/matching.hpp"

namespace linematch {

int exponent_above(double value) {
  if (!(value > 0.0) || std::isinf(value)) throw Error(ErrorCode::DomainError, "estimate needs a positive finite cost");
  int j = static_cast<int>(std::floor(std::log10(value))) + 1;
  while (pow10(j - 1) > value) --j;
  while (pow10(j) <= value) ++j;
  return j;
}

double pow10(int exponent) { return std::pow(10.0, exponent); }

LineState::LineState(std::span<const double> sorted_servers)
    : servers_(sorted_servers.begin(), sorted_servers.end()),
      available_(servers_.size(), 1),
      imaginary_(servers_.size(), 1),
      available_count_(servers_.size()) {}

std::vector<std::size_t> LineState::available_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (available_[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> LineState::imaginary_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (imaginary_[i]) out.push_back(i);
  return out;
}

std::vector<double> LineState::available_positions() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (available_[i]) out.push_back(servers_[i]);
  return out;
}

std::vector<double> LineState::imaginary_positions() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (imaginary_[i]) out.push_back(servers_[i]);
  return out;
}

std::optional<std::size_t> LineState::server_at(double x) const {
  auto it = std::lower_bound(servers_.begin(), servers_.end(), x);
  if (it == servers_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - servers_.begin());
}

std::optional<std::size_t> LineState::available_at(double x) const {
  auto i = server_at(x);
  if (i && available_[*i]) return i;
  return std::nullopt;
}

std::optional<std::size_t> LineState::imaginary_at(double x) const {
  auto i = server_at(x);
  if (i && imaginary_[*i]) return i;
  return std::nullopt;
}

std::optional<std::size_t> LineState::scan_left(const std::vector<char>& flags, double x) const {
  auto k = static_cast<std::size_t>(std::lower_bound(servers_.begin(), servers_.end(), x) - servers_.begin());
  while (k > 0) {
    --k;
    if (flags[k]) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> LineState::scan_right(const std::vector<char>& flags, double x) const {
  auto k = static_cast<std::size_t>(std::upper_bound(servers_.begin(), servers_.end(), x) - servers_.begin());
  for (; k < size(); ++k)
    if (flags[k]) return k;
  return std::nullopt;
}

std::optional<std::size_t> LineState::available_left(double x) const { return scan_left(available_, x); }
std::optional<std::size_t> LineState::available_right(double x) const { return scan_right(available_, x); }
std::optional<std::size_t> LineState::imaginary_left(double x) const { return scan_left(imaginary_, x); }
std::optional<std::size_t> LineState::imaginary_right(double x) const { return scan_right(imaginary_, x); }

std::size_t LineState::partner_of_imaginary(std::size_t i) const {
  if (i >= size() || !imaginary_[i]) throw Error(ErrorCode::IndexOutOfRange, "not an imaginary server");
  std::size_t rank = 0;
  for (std::size_t k = 0; k < i; ++k) rank += imaginary_[k] ? 1 : 0;
  for (std::size_t k = 0; k < size(); ++k) {
    if (!available_[k]) continue;
    if (rank == 0) return k;
    --rank;
  }
  throw Error(ErrorCode::NoAvailableServer, "imaginary and available sets differ in size");
}

void LineState::set_z_exponent(int e) {
  z_exponent_ = e;
  z_set_ = true;
}

void LineState::take(std::size_t i) {
  if (i >= size() || !available_[i]) throw Error(ErrorCode::NoAvailableServer, "server is not available");
  available_[i] = 0;
  --available_count_;
}

void LineState::drop_imaginary(std::size_t i) {
  if (i >= size() || !imaginary_[i]) throw Error(ErrorCode::IndexOutOfRange, "not an imaginary server");
  imaginary_[i] = 0;
}

void LineState::reset_imaginary(std::span<const std::size_t> free_servers) {
  std::fill(imaginary_.begin(), imaginary_.end(), 0);
  for (std::size_t i : free_servers) imaginary_.at(i) = 1;
}

RunContext::RunContext(std::vector<double> sorted_servers, PdMode mode, ChoiceSource& root)
    : servers_(std::move(sorted_servers)), mode_(mode), root_(&root) {}

double RunContext::opt(std::size_t len) {
  if (len > requests_.size()) throw Error(ErrorCode::IndexOutOfRange, "prefix longer than revealed requests");
  while (opt_.size() <= len) {
    const std::size_t l = opt_.size();
    opt_.push_back(optimal_partial_cost(std::span<const double>(requests_.data(), l), servers_));
  }
  return opt_[len];
}

void RunContext::record_opt(std::size_t len, double value) {
  if (len < opt_.size()) return;
  if (len != opt_.size()) opt(len - 1);
  opt_.push_back(value);
}

}  // namespace linematch
