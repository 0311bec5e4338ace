#include "linematch/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "json.hpp"
#include "linematch/error.hpp"
#include "linematch/matching.hpp"
#include "linematch/run.hpp"

namespace linematch {

std::string_view to_string(ReductionMode mode) {
  switch (mode) {
    case ReductionMode::None: return "none";
    case ReductionMode::PerturbColocated: return "perturb";
    case ReductionMode::SnapRequests: return "snap";
    case ReductionMode::Both: return "both";
  }
  return "?";
}

ReductionMode parse_reduction(std::string_view name) {
  if (name == "none") return ReductionMode::None;
  if (name == "perturb") return ReductionMode::PerturbColocated;
  if (name == "snap") return ReductionMode::SnapRequests;
  if (name == "both") return ReductionMode::Both;
  throw Error(ErrorCode::BadParams, "unknown reduction '" + std::string(name) + "'");
}

RescaledInstance rescale_to_unit_gap(const Instance& inst) {
  std::vector<double> s = inst.servers;
  std::sort(s.begin(), s.end());
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[i - 1]) min_gap = std::min(min_gap, s[i] - s[i - 1]);
  }
  AffineMap map;
  if (std::isfinite(min_gap)) map.scale = 1.0 / min_gap;
  RescaledInstance out{inst, map};
  for (double& x : out.instance.servers) x = map.apply(x);
  for (double& x : out.instance.requests) x = map.apply(x);
  std::sort(out.instance.servers.begin(), out.instance.servers.end());
  return out;
}

LiftedInstance lift_colocated(const Instance& inst, double epsilon) {
  LiftedInstance out;
  out.original_servers = inst.servers;
  std::sort(out.original_servers.begin(), out.original_servers.end());
  out.epsilon = epsilon;
  out.instance.requests = inst.requests;
  const auto& s = out.original_servers;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const std::size_t extras = j - i - 1;
    out.instance.servers.push_back(s[i]);
    for (std::size_t e = 1; e <= extras; ++e) {
      out.instance.servers.push_back(s[i] + static_cast<double>(e) * epsilon / static_cast<double>(extras));
    }
    i = j;
  }
  return out;
}

PerturbationWrapper::PerturbationWrapper(std::span<const double> sorted_servers, double epsilon, AlgorithmKind kind,
                                         ChoiceSource& rng, RunOptions options)
    : original_(sorted_servers.begin(), sorted_servers.end()), taken_(original_.size(), 0) {
  perturbed_ = lift_colocated(Instance{original_, {}}, epsilon).instance.servers;
  if (!(epsilon > 0.0) || std::adjacent_find(perturbed_.begin(), perturbed_.end(), std::greater_equal<>()) != perturbed_.end()) {
    throw Error(ErrorCode::BadParams, "epsilon must be positive and below the smallest gap");
  }
  inner_ = make_algorithm(kind, perturbed_, rng, options);
}

std::size_t PerturbationWrapper::serve(double x) {
  double simulated = x;
  auto lo = std::lower_bound(original_.begin(), original_.end(), x);
  for (auto it = lo; it != original_.end() && *it == x; ++it) {
    const auto i = static_cast<std::size_t>(it - original_.begin());
    if (!taken_[i]) {
      simulated = perturbed_[i];
      break;
    }
  }
  simulated_.push_back(simulated);
  const std::size_t s = inner_->serve(simulated);
  taken_[s] = 1;
  return s;
}

double nearest_location(std::span<const double> sorted, double x) {
  if (sorted.empty()) throw Error(ErrorCode::NoAvailableServer, "no servers");
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  if (it == sorted.end()) return sorted.back();
  if (it == sorted.begin() || *it == x) return *it;
  const double right = *it;
  const double left = *(it - 1);
  return (right - x < x - left) ? right : left;
}

SnapWrapper::SnapWrapper(std::unique_ptr<Matcher> inner) : inner_(std::move(inner)) {}

std::size_t SnapWrapper::serve(double x) {
  const double t = nearest_location(inner_->servers(), x);
  simulated_.push_back(t);
  return inner_->serve(t);
}

bool PerturbationAccounting::online_holds() const { return on_b <= on_a + n_epsilon + kCostTolerance; }
bool PerturbationAccounting::opt_holds() const { return opt_b >= opt_a - n_epsilon - kCostTolerance; }

PerturbationAccounting account_perturbation(const Instance& inst, AlgorithmKind kind, std::uint64_t seed,
                                            double epsilon) {
  const RescaledInstance scaled = rescale_to_unit_gap(inst);
  const auto& servers = scaled.instance.servers;
  const double n = static_cast<double>(servers.size());
  if (epsilon <= 0.0) epsilon = 1.0 / (5.0 * n);
  SeededChoices rng(seed);
  PerturbationWrapper b(servers, epsilon, kind, rng);
  PerturbationAccounting acc;
  acc.n_epsilon = n * epsilon;
  const auto& perturbed = b.perturbed_servers();
  for (double r : scaled.instance.requests) {
    const std::size_t s = b.serve(r);
    acc.on_b += std::abs(r - servers[s]);
    acc.on_a += std::abs(b.simulated_requests().back() - perturbed[s]);
  }
  acc.opt_b = optimal_partial_cost(scaled.instance.requests, servers);
  acc.opt_a = optimal_partial_cost(b.simulated_requests(), perturbed);
  return acc;
}

bool SnapAccounting::online_holds() const { return on_c <= on_b + opt_c + kCostTolerance; }
bool SnapAccounting::opt_holds() const { return opt_c >= 0.5 * opt_b - kCostTolerance; }

SnapAccounting account_snap(const Instance& inst, AlgorithmKind kind, std::uint64_t seed) {
  const std::vector<double> servers = distinct_servers(inst.servers);
  SeededChoices rng(seed);
  SnapWrapper c(make_algorithm(kind, servers, rng));
  SnapAccounting acc;
  for (double r : inst.requests) {
    const std::size_t s = c.serve(r);
    acc.on_c += std::abs(r - servers[s]);
    acc.on_b += std::abs(c.simulated_requests().back() - servers[s]);
  }
  acc.opt_c = optimal_partial_cost(inst.requests, servers);
  acc.opt_b = optimal_partial_cost(c.simulated_requests(), servers);
  return acc;
}

ReducedRun run_reduced(const Instance& inst, AlgorithmKind kind, std::uint64_t seed, const ReductionConfig& cfg,
                       RunOptions options) {
  ReducedRun out;
  out.algorithm = std::string(to_string(kind));
  out.seed = seed;
  out.mode = cfg.mode;
  out.instance = inst;
  std::sort(out.instance.servers.begin(), out.instance.servers.end());
  if (inst.requests.size() > inst.servers.size()) throw Error(ErrorCode::TooManyRequests, "more requests than servers");

  const bool perturb = cfg.mode == ReductionMode::PerturbColocated || cfg.mode == ReductionMode::Both;
  const bool snap = cfg.mode == ReductionMode::SnapRequests || cfg.mode == ReductionMode::Both;
  const RescaledInstance scaled = perturb ? rescale_to_unit_gap(out.instance) : RescaledInstance{out.instance, {}};
  out.scale = scaled.map.scale;
  const auto& servers = scaled.instance.servers;
  out.epsilon = perturb ? (cfg.epsilon > 0.0 ? cfg.epsilon : 1.0 / (5.0 * static_cast<double>(servers.size()))) : 0.0;

  SeededChoices rng(seed);
  std::unique_ptr<Matcher> matcher;
  const OnlineAlgorithm* algo = nullptr;
  const PerturbationWrapper* pw = nullptr;
  if (perturb) {
    auto w = std::make_unique<PerturbationWrapper>(servers, out.epsilon, kind, rng, options);
    algo = &w->inner();
    pw = w.get();
    matcher = std::move(w);
  } else {
    auto a = make_algorithm(kind, distinct_servers(servers), rng, options);
    algo = a.get();
    matcher = std::move(a);
  }
  if (snap) matcher = std::make_unique<SnapWrapper>(std::move(matcher));

  for (double r : scaled.instance.requests) {
    const std::size_t s = matcher->serve(r);
    out.assignments.push_back(s);
    out.online_cost += std::abs(r - servers[s]);
  }
  out.online_cost = scaled.map.invert(out.online_cost);
  out.opt = optimal_partial_cost(out.instance.requests, out.instance.servers);
  out.ratio = competitive_ratio(out.online_cost, out.opt);

  std::vector<double> inner_requests;
  for (const StepTrace& st : algo->steps()) inner_requests.push_back(st.request);
  const std::vector<double>& inner_servers = pw ? pw->perturbed_servers() : servers;
  out.inner = finish_transcript(*algo, Instance{inner_servers, inner_requests}, seed);
  return out;
}

std::string reduced_run_to_json(const ReducedRun& r) {
  nlohmann::ordered_json j{{"algorithm", r.algorithm},
                           {"seed", r.seed},
                           {"reduction", {{"mode", to_string(r.mode)}, {"epsilon", r.epsilon}, {"scale", r.scale}}},
                           {"servers", r.instance.servers},
                           {"requests", r.instance.requests},
                           {"assignments", r.assignments},
                           {"online_cost", r.online_cost},
                           {"opt", r.opt},
                           {"ratio", r.ratio},
                           {"inner", nlohmann::ordered_json::parse(transcript_to_json(r.inner))}};
  return j.dump(2) + "\n";
}

}  // namespace linematch
