#include <cmath>
#include <string>

#include "linematch/algorithms.hpp"
#include "linematch/error.hpp"

namespace linematch {

std::string_view to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::Greedy: return "greedy";
    case AlgorithmKind::Harmonic: return "harmonic";
    case AlgorithmKind::DoubledHarmonic: return "dh";
    case AlgorithmKind::ModifiedDoubledHarmonic: return "mdh";
  }
  return "?";
}

AlgorithmKind parse_algorithm(std::string_view name) {
  if (name == "greedy") return AlgorithmKind::Greedy;
  if (name == "harmonic") return AlgorithmKind::Harmonic;
  if (name == "dh") return AlgorithmKind::DoubledHarmonic;
  if (name == "mdh") return AlgorithmKind::ModifiedDoubledHarmonic;
  throw Error(ErrorCode::BadParams, "unknown algorithm '" + std::string(name) + "'");
}

double AssignmentDistribution::probability_of(std::size_t server) const {
  double p = 0.0;
  for (const auto& [s, q] : support)
    if (s == server) p += q;
  return p;
}

double AssignmentDistribution::total() const {
  double p = 0.0;
  for (const auto& entry : support) p += entry.second;
  return p;
}

std::size_t greedy_choice(const LineState& state, double x) {
  if (state.available_count() == 0) throw Error(ErrorCode::NoAvailableServer, "no server left");
  if (auto at = state.available_at(x)) return *at;
  const auto l = state.available_left(x);
  const auto r = state.available_right(x);
  if (!l) return *r;
  if (!r) return *l;
  const auto& s = state.servers();
  return (s[*r] - x < x - s[*l]) ? *r : *l;
}

AssignmentDistribution harmonic_distribution(const LineState& state, double x) {
  if (state.available_count() == 0) throw Error(ErrorCode::NoAvailableServer, "no server left");
  if (auto at = state.available_at(x)) return {{{*at, 1.0}}};
  const auto l = state.available_left(x);
  const auto r = state.available_right(x);
  if (!l) return {{{*r, 1.0}}};
  if (!r) return {{{*l, 1.0}}};
  const auto& s = state.servers();
  const double dl = x - s[*l];
  const double dr = s[*r] - x;
  const double p_right = dl / (dl + dr);
  return {{{*l, 1.0 - p_right}, {*r, p_right}}};
}

double imaginary_right_probability(const PseudoMetric& metric, const std::vector<double>& servers, double x,
                                   std::size_t il, std::size_t ir) {
  if (auto p = try_neighbor_probs(metric.from_point(x, il), metric.from_point(x, ir))) return p->right;
  return neighbor_probs(x - servers[il], servers[ir] - x).right;
}

namespace {

StepTrace simple_trace(const LineState& state, std::size_t t, double x, std::size_t server, const char* case_id) {
  StepTrace s;
  s.t = t;
  s.request = x;
  s.case_id = case_id;
  s.server = server;
  s.server_position = state.servers()[server];
  s.cost = std::abs(x - s.server_position);
  return s;
}

}  // namespace

Greedy::Greedy(std::span<const double> sorted_servers) : state_(sorted_servers) {}

std::size_t Greedy::serve(double x) {
  const std::size_t server = greedy_choice(state_, x);
  steps_.push_back(simple_trace(state_, steps_.size() + 1, x, server, "greedy"));
  state_.take(server);
  return server;
}

Harmonic::Harmonic(std::span<const double> sorted_servers, ChoiceSource& rng) : state_(sorted_servers), rng_(&rng) {}

std::size_t Harmonic::serve(double x) {
  const AssignmentDistribution d = harmonic_distribution(state_, x);
  const std::size_t before = rng_->draws();
  std::size_t server = d.support.front().first;
  const char* case_id = "forced";
  std::optional<double> p_right;
  if (d.support.size() == 2) {
    case_id = "harmonic";
    p_right = d.support[1].second;
    if (rng_->bernoulli(*p_right)) server = d.support[1].first;
  }
  StepTrace s = simple_trace(state_, steps_.size() + 1, x, server, case_id);
  s.p_right = p_right;
  s.draws = rng_->draws() - before;
  steps_.push_back(std::move(s));
  state_.take(server);
  return server;
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(AlgorithmKind kind, std::span<const double> sorted_servers,
                                                ChoiceSource& rng, RunOptions options) {
  switch (kind) {
    case AlgorithmKind::Greedy: return std::make_unique<Greedy>(sorted_servers);
    case AlgorithmKind::Harmonic: return std::make_unique<Harmonic>(sorted_servers, rng);
    case AlgorithmKind::DoubledHarmonic: return std::make_unique<DoubledHarmonic>(sorted_servers, rng, options);
    case AlgorithmKind::ModifiedDoubledHarmonic:
      return std::make_unique<ModifiedDoubledHarmonic>(sorted_servers, rng, options);
  }
  throw Error(ErrorCode::BadParams, "unknown algorithm");
}

}  // namespace linematch
