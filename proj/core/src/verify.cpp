#include "linematch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "linematch/error.hpp"
#include "linematch/generators.hpp"
#include "linematch/matching.hpp"
#include "linematch/run.hpp"

namespace linematch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMonotoneSlack = 1e-10;
constexpr double kPotentialSlack = 1e-9;
constexpr double kFactSlack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// A reachable MDH state: an instance, a seed, and a prefix already served.
struct ReachableState {
  Instance inst;
  std::uint64_t seed = 0;
  std::size_t prefix = 0;
};

ReachableState random_state(std::mt19937_64& rng, std::size_t max_n) {
  ReachableState st;
  const std::size_t n = 4 + below(rng, max_n - 3);
  const auto kind = static_cast<GeneratorKind>(below(rng, 4));
  st.inst = generate_instance(kind, n, rng());
  st.seed = rng();
  st.prefix = 1 + below(rng, n - 2);
  return st;
}

/// Owns the random stream an MDH instance draws from.
struct MdhAt {
  SeededChoices choices;
  ModifiedDoubledHarmonic mdh;

  explicit MdhAt(const ReachableState& st) : choices(st.seed), mdh(st.inst.servers, choices) {
    for (std::size_t t = 0; t < st.prefix; ++t) mdh.serve(st.inst.requests[t]);
  }
};

std::string state_label(const ReachableState& st) {
  return "n=" + std::to_string(st.inst.servers.size()) + " seed=" + std::to_string(st.seed) +
         " prefix=" + std::to_string(st.prefix) + " digest=" + std::to_string(instance_digest(st.inst));
}

std::vector<double> sample_points(double left, double right, std::span<const double> breakpoints, std::size_t grid) {
  std::vector<double> xs;
  const double width = right - left;
  const double delta = 1e-7 * width;
  for (std::size_t k = 0; k <= grid; ++k) {
    xs.push_back(k == grid ? right : left + width * static_cast<double>(k) / static_cast<double>(grid));
  }
  for (double b : breakpoints) {
    for (double x : {b - delta, b, b + delta}) {
      if (x >= left && x <= right) xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::vector<double> without_one(const std::vector<double>& v, double x) {
  std::vector<double> out = v;
  auto it = std::find(out.begin(), out.end(), x);
  if (it != out.end()) out.erase(it);
  return out;
}

}  // namespace

void CheckReport::observe(double margin, const std::string& what) {
  ++trials;
  worst_margin = std::min(worst_margin, margin);
  if (margin < 0.0) {
    ++violations;
    details.push_back(what + " (margin " + fmt(margin) + ")");
  }
}

void CheckReport::merge(const CheckReport& other) {
  trials += other.trials;
  violations += other.violations;
  worst_margin = std::min(worst_margin, other.worst_margin);
  details.insert(details.end(), other.details.begin(), other.details.end());
}

CheckReport make_report(std::string name) {
  CheckReport r;
  r.name = std::move(name);
  r.worst_margin = kInf;
  return r;
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  bool all = true;
  for (const CheckReport& r : reports) {
    all = all && r.passed();
    arr.push_back(nlohmann::ordered_json{{"name", r.name},
                                         {"trials", r.trials},
                                         {"violations", r.violations},
                                         {"worst_margin", std::isfinite(r.worst_margin)
                                                              ? nlohmann::ordered_json(r.worst_margin)
                                                              : nlohmann::ordered_json(nullptr)},
                                         {"passed", r.passed()},
                                         {"details", r.details}});
  }
  nlohmann::ordered_json out{{"passed", all}, {"checks", arr}};
  return out.dump(2) + "\n";
}

CheckReport check_monotonicity(const std::string& name, const std::function<double(double)>& p_right, double left,
                               double right, std::span<const double> breakpoints, std::size_t grid) {
  CheckReport rep = make_report(name);
  if (!(left < right)) throw Error(ErrorCode::DegenerateInterval, "monotonicity needs left < right");
  grid = std::max<std::size_t>(grid, 1);
  const std::vector<double> xs = sample_points(left, right, breakpoints, grid);
  double prev = p_right(xs.front());
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double cur = p_right(xs[k]);
    rep.observe(cur - prev + kMonotoneSlack,
                "Pr[right] drops from " + fmt(prev) + " at " + fmt(xs[k - 1]) + " to " + fmt(cur) + " at " + fmt(xs[k]));
    prev = cur;
  }
  return rep;
}

CheckReport check_monotonicity(const ModifiedDoubledHarmonic& mdh, std::size_t interval, std::size_t grid) {
  const LineState& state = mdh.state();
  const auto avail = state.available_indices();
  if (interval + 1 >= avail.size()) throw Error(ErrorCode::IndexOutOfRange, "no such interval between available servers");
  const auto& s = state.servers();
  const std::size_t ia = avail[interval];
  const std::size_t ib = avail[interval + 1];
  const double a = s[ia];
  const double b = s[ib];

  std::vector<double> breaks(s.begin() + static_cast<std::ptrdiff_t>(ia) + 1, s.begin() + static_cast<std::ptrdiff_t>(ib));
  for (const Island& isl : mdh.islands().intervals()) {
    for (double e : {isl.lo, isl.hi})
      if (e > a && e < b) breaks.push_back(e);
  }
  const TriggerContext ctx = mdh.trigger_context(ia, ib);
  for (double e : trigger_breakpoints(ctx)) breaks.push_back(e);
  breaks.push_back(ctx.midpoint());

  CheckReport rep = check_monotonicity(
      "monotonicity", [&](double x) { return mdh.next_distribution(x).probability_of(ib); }, a, b, breaks, grid);

  // One Pr[right] per (y_left, y_right, side of m) among trigger points.
  std::map<std::tuple<double, double, bool>, double> seen;
  for (double x : sample_points(a, b, breaks, grid)) {
    if (x <= a || x >= b) continue;
    const MdhPlan p = mdh.plan(x);
    if (!p.trigger) continue;
    const auto key = std::make_tuple(*p.y_left, *p.y_right, x < ctx.midpoint());
    const double pr = mdh.next_distribution(x).probability_of(ib);
    auto [it, fresh] = seen.emplace(key, pr);
    if (!fresh) {
      rep.observe(kMonotoneSlack - std::abs(pr - it->second),
                  "trigger point " + fmt(x) + " has Pr[right] " + fmt(pr) + " but its group has " + fmt(it->second));
    }
  }
  return rep;
}

CheckReport check_monotonicity_states(std::size_t states, std::uint64_t seed, std::size_t grid, std::size_t max_n) {
  CheckReport total = make_report("monotonicity");
  std::mt19937_64 rng(splitmix64(seed));
  for (std::size_t k = 0; k < states; ++k) {
    const ReachableState st = random_state(rng, max_n);
    MdhAt at(st);
    const std::size_t intervals = at.mdh.state().available_count() - 1;
    for (std::size_t i = 0; i < intervals; ++i) {
      CheckReport r = check_monotonicity(at.mdh, i, grid);
      for (auto& d : r.details) d = state_label(st) + " interval " + std::to_string(i) + ": " + d;
      total.merge(r);
    }
  }
  return total;
}

CheckReport check_potential(const RunTranscript& tr) {
  CheckReport rep = make_report("potential");
  std::map<std::size_t, const StepTrace*> by_t;
  for (const StepTrace& s : tr.steps) by_t[s.t] = &s;
  for (const PhaseRecord& phase : tr.phases) {
    const StepTrace* prev = nullptr;
    double prev_after = 0.0;
    for (std::size_t t : phase.steps) {
      const StepTrace& s = *by_t.at(t);
      if (!s.potential) continue;
      const PotentialRecord& p = *s.potential;
      double g_before = p.g_before;
      double g_after = p.g_after;
      if (s.before && s.imaginary_server) {
        const double gamma = tr.servers.at(*s.imaginary_server);
        const double d_before = sorted_pairing_cost(s.before->available, s.before->imaginary);
        const double d_after = sorted_pairing_cost(without_one(s.before->available, s.server_position),
                                                   without_one(s.before->imaginary, gamma));
        const double step = std::abs(s.request - s.server_position) - std::abs(s.request - gamma);
        g_before = d_before + (p.g_before - p.d_before);
        g_after = d_after + (p.g_before - p.d_before) + step;
        rep.observe(kPotentialSlack - std::abs(d_before - p.d_before),
                    "t=" + std::to_string(t) + ": recorded D differs from the snapshot");
        rep.observe(kPotentialSlack - std::abs(g_after - p.g_after),
                    "t=" + std::to_string(t) + ": recorded g differs from the snapshot");
      }
      if (prev) {
        rep.observe(kPotentialSlack - std::abs(g_before - prev_after),
                    "t=" + std::to_string(t) + ": g does not continue from the previous step");
      }
      rep.observe(g_before - g_after + kPotentialSlack,
                  "phase " + std::to_string(phase.index) + " t=" + std::to_string(t) + ": g rises from " +
                      fmt(g_before) + " to " + fmt(g_after));
      prev = &s;
      prev_after = g_after;
    }
  }
  return rep;
}

CheckReport check_potential_runs(std::size_t runs, std::uint64_t seed, std::size_t max_n) {
  CheckReport total = make_report("potential");
  std::mt19937_64 rng(splitmix64(seed + 1));
  for (std::size_t k = 0; k < runs; ++k) {
    const std::size_t n = 2 + below(rng, max_n - 1);
    const auto kind = static_cast<GeneratorKind>(below(rng, 4));
    const Instance inst = generate_instance(kind, n, rng());
    const std::uint64_t run_seed = rng();
    RunOptions opts;
    opts.record_sets = true;
    CheckReport r = check_potential(run(inst, AlgorithmKind::ModifiedDoubledHarmonic, run_seed, opts));
    for (auto& d : r.details) {
      d = std::string(to_string(kind)) + " n=" + std::to_string(n) + " seed=" + std::to_string(run_seed) + ": " + d;
    }
    total.merge(r);
  }
  return total;
}

CheckReport check_n_facts(std::size_t samples, std::uint64_t seed) {
  CheckReport rep = make_report("n_facts");
  std::mt19937_64 rng(splitmix64(seed + 2));
  // Uniform on [lo, hi], landing exactly on an end 10% of the time.
  auto draw = [&](double lo, double hi) {
    const double u = unit(rng);
    if (u < 0.05) return lo;
    if (u < 0.10) return hi;
    return lo + (hi - lo) * unit(rng);
  };
  for (std::size_t k = 0; k < samples; ++k) {
    double a = draw(0.0, 1.0), b = draw(0.0, 1.0);
    if (a > b) std::swap(a, b);
    double g = draw(0.0, 0.5);
    rep.observe(normalized_cost(b, g) - normalized_cost(a, g) + kFactSlack,
                "(a) alpha=" + fmt(a) + " beta=" + fmt(b) + " gamma=" + fmt(g));

    a = draw(0.0, 1.0), b = draw(0.0, 1.0);
    if (a < b) std::swap(a, b);
    g = draw(0.5, 1.0);
    rep.observe(normalized_cost(b, g) - normalized_cost(a, g) + kFactSlack,
                "(b) alpha=" + fmt(a) + " beta=" + fmt(b) + " gamma=" + fmt(g));

    a = draw(0.0, 0.5), b = draw(0.0, 0.5);
    if (b > a) std::swap(a, b);
    g = draw(0.0, 0.5);
    rep.observe(2.0 * std::max(a, normalized_cost(b, g)) - normalized_cost(a, g) + kFactSlack,
                "(c) alpha=" + fmt(a) + " beta=" + fmt(b) + " gamma=" + fmt(g));

    a = draw(0.5, 1.0), b = draw(0.5, 1.0);
    if (b < a) std::swap(a, b);
    g = draw(0.5, 1.0);
    rep.observe(2.0 * std::max(1.0 - a, normalized_cost(b, g)) - normalized_cost(a, g) + kFactSlack,
                "(d) alpha=" + fmt(a) + " beta=" + fmt(b) + " gamma=" + fmt(g));
  }
  return rep;
}

namespace {

struct CounterLeaf {
  std::size_t r2_imaginary = 0;
  std::size_t r3_server = 0;
  std::size_t simulated_r2 = 0;
  double simulated_p = 0.0;
};

struct Conditional {
  double p_s3 = 0.0;
  double p_s4 = 0.0;
  double sim_right_mass = 0.0;
  double sim_p = 0.0;
  std::size_t leaves = 0;
};

Conditional counter_run(double x3, PdMode mode) {
  const std::vector<double> servers{0.0, 4.0, 11.0, 31.0};
  RunOptions opts;
  opts.pd_mode = mode;
  auto leaves = enumerate_branches([&](ChoiceSource& c) {
    DoubledHarmonic dh(servers, c, opts);
    dh.serve(4.0);
    dh.serve(4.0);
    dh.serve(x3);
    CounterLeaf leaf;
    leaf.r2_imaginary = *dh.steps()[1].imaginary_server;
    leaf.r3_server = dh.steps()[2].server;
    if (dh.steps()[2].trigger) {
      const TriggerRecord& tr = dh.triggers().back();
      leaf.simulated_r2 = tr.simulated_assignments.at(1);
      leaf.simulated_p = tr.simulated_p_right.at(1).value_or(std::nan(""));
    }
    return leaf;
  });
  Conditional out;
  out.leaves = leaves.size();
  double mass = 0.0;
  for (const auto& l : leaves) {
    if (l.value.r2_imaginary != 0) continue;
    mass += l.probability;
    if (l.value.r3_server == 2) out.p_s3 += l.probability;
    if (l.value.r3_server == 3) out.p_s4 += l.probability;
    if (l.value.simulated_r2 == 2) out.sim_right_mass += l.probability;
    out.sim_p = l.value.simulated_p;
  }
  out.p_s3 /= mass;
  out.p_s4 /= mass;
  out.sim_right_mass /= mass;
  return out;
}

}  // namespace

DhCounterexample dh_counterexample_numbers() {
  DhCounterexample out;
  const Conditional at_s1 = counter_run(0.0, PdMode::Pseudo);
  const Conditional at_s2 = counter_run(4.0, PdMode::Pseudo);
  const Conditional raw_s2 = counter_run(4.0, PdMode::Raw);
  out.p_s3_given_s1 = at_s1.p_s3;
  out.p_s3_given_s2 = at_s2.p_s3;
  out.p_s4_given_s2 = at_s2.p_s4;
  out.adjustment_p_right = at_s2.sim_p;
  out.adjustment_right_mass = at_s2.sim_right_mass;
  out.raw_p_s3_given_s2 = raw_s2.p_s3;
  out.raw_p_s4_given_s2 = raw_s2.p_s4;
  out.expected_p_s4_given_s2 = (4.0 / 11.0) * (6.25 / 33.25);
  out.expected_raw_p_s4_given_s2 = (4.0 / 11.0) * (4.0 / 31.0);
  out.leaves = at_s1.leaves + at_s2.leaves + raw_s2.leaves;
  return out;
}

CheckReport reproduce_dh_counterexample() {
  CheckReport rep = make_report("dh_counterexample");
  const DhCounterexample c = dh_counterexample_numbers();
  rep.observe(c.p_s3_given_s1 == 1.0 ? 0.0 : -std::abs(c.p_s3_given_s1 - 1.0),
              "Pr[r3->s3 | r3=s1] = " + fmt(c.p_s3_given_s1) + ", expected exactly 1");
  rep.observe(1.0 - c.p_s3_given_s2 > 0.0 ? 1.0 - c.p_s3_given_s2 : -1.0,
              "Pr[r3->s3 | r3=s2] = " + fmt(c.p_s3_given_s2) + ", expected < 1");
  rep.observe(c.adjustment_p_right == 4.0 / 11.0 ? 0.0 : -std::abs(c.adjustment_p_right - 4.0 / 11.0),
              "adjustment p_right for r2 = " + fmt(c.adjustment_p_right) + ", expected 4/11");
  rep.observe(kFactSlack - std::abs(c.adjustment_right_mass - 4.0 / 11.0),
              "Pr[simulated r2 -> s3] = " + fmt(c.adjustment_right_mass) + ", expected 4/11");
  rep.observe(kFactSlack - std::abs(c.p_s4_given_s2 - c.expected_p_s4_given_s2),
              "Pr[r3->s4 | r3=s2] = " + fmt(c.p_s4_given_s2) + ", expected " + fmt(c.expected_p_s4_given_s2));
  rep.observe(kFactSlack - std::abs(c.raw_p_s4_given_s2 - c.expected_raw_p_s4_given_s2),
              "raw reading Pr[r3->s4 | r3=s2] = " + fmt(c.raw_p_s4_given_s2) + ", expected " +
                  fmt(c.expected_raw_p_s4_given_s2));
  return rep;
}

CheckReport check_matching_oracles(std::size_t trials, std::uint64_t seed) {
  CheckReport rep = make_report("matching_oracles");
  std::mt19937_64 rng(splitmix64(seed + 3));
  // Multiples of 1/8 keep every sum exact, so both routes must agree exactly.
  auto points = [&](std::size_t m) {
    std::vector<double> v(m);
    for (double& x : v) x = static_cast<double>(below(rng, 801)) / 8.0;
    return v;
  };
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t m = 1 + below(rng, 8);
    const auto p = points(m), q = points(m);
    const double a = optimal_matching_cost(p, q).cost;
    const double b = brute_force_matching(p, q).cost;
    rep.observe(kFactSlack - std::abs(a - b), "sorted pairing " + fmt(a) + " vs brute force " + fmt(b));
  }
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t t = below(rng, 7);
    const std::size_t n = std::max<std::size_t>(1, t) + below(rng, 9 - std::max<std::size_t>(1, t));
    const auto r = points(t);
    auto s = points(n);
    std::sort(s.begin(), s.end());
    const double a = optimal_partial_cost(r, s);
    const double b = brute_force_partial_cost(r, s);
    rep.observe(kFactSlack - std::abs(a - b), "partial DP " + fmt(a) + " vs brute force " + fmt(b));
  }
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t m = 1 + below(rng, 8);
    auto p = points(m), q = points(m);
    std::sort(p.begin(), p.end());
    std::sort(q.begin(), q.end());
    const std::size_t g = 1 + below(rng, m), h = 1 + below(rng, m);
    const DpqBound d = dpq_bound_check(p, q, g, h);
    const double brute_delta = brute_force_matching(without_one(p, p[g - 1]), without_one(q, q[h - 1])).cost -
                               brute_force_matching(p, q).cost;
    rep.observe(d.bound - brute_delta + kCostTolerance,
                "removal bound g=" + std::to_string(g) + " h=" + std::to_string(h) + ": delta " + fmt(brute_delta) +
                    " > bound " + fmt(d.bound));
    rep.observe(d.holds ? kFactSlack - std::abs(d.delta - brute_delta) : -1.0,
                "dpq_bound_check disagrees with brute force");
  }
  return rep;
}

CheckReport check_distribution_consistency(std::size_t cases, std::size_t samples, std::uint64_t seed, double sigmas) {
  CheckReport rep = make_report("distribution_consistency");
  std::mt19937_64 rng(splitmix64(seed + 4));
  for (std::size_t k = 0; k < cases; ++k) {
    const ReachableState st = random_state(rng, 32);
    MdhAt at(st);
    const ModifiedDoubledHarmonic& mdh = at.mdh;
    const auto& s = mdh.state().servers();
    const auto avail = mdh.state().available_indices();
    double x = 0.0;
    const double u = unit(rng);
    if (u < 0.5) {
      const std::size_t i = below(rng, avail.size() - 1);
      x = s[avail[i]] + (s[avail[i + 1]] - s[avail[i]]) * unit(rng);
    } else if (u < 0.75) {
      x = s[below(rng, s.size())];
    } else {
      x = s.front() - 5.0 + (s.back() - s.front() + 10.0) * unit(rng);
    }
    const AssignmentDistribution dist = mdh.next_distribution(x);
    const std::string label = state_label(st) + " x=" + fmt(x);
    rep.observe(kFactSlack - std::abs(dist.total() - 1.0), label + ": probabilities do not sum to 1");
    SeededChoices draws(rng());
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t j = 0; j < samples; ++j) ++counts[mdh.decide(x, draws).server];
    for (const auto& [server, count] : counts) {
      if (dist.probability_of(server) == 0.0) {
        rep.observe(-static_cast<double>(count), label + ": sampled server " + std::to_string(server) + " outside support");
      }
    }
    const double n = static_cast<double>(samples);
    for (const auto& [server, p] : dist.support) {
      const double observed = static_cast<double>(counts[server]);
      const double sd = std::sqrt(n * p * (1.0 - p));
      rep.observe(sigmas * sd - std::abs(observed - n * p),
                  label + ": server " + std::to_string(server) + " sampled " + fmt(observed) + " times, expected " +
                      fmt(n * p));
    }
  }
  return rep;
}

std::vector<CheckReport> run_verify_battery(const VerifyConfig& cfg) {
  std::vector<CheckReport> out;
  out.push_back(reproduce_dh_counterexample());
  out.push_back(check_monotonicity_states(cfg.monotonicity_states, cfg.seed, cfg.grid));
  out.push_back(check_potential_runs(cfg.potential_runs, cfg.seed));
  out.push_back(check_matching_oracles(cfg.oracle_trials, cfg.seed));
  out.push_back(check_n_facts(cfg.n_fact_samples, cfg.seed));
  out.push_back(check_distribution_consistency(cfg.distribution_cases, cfg.distribution_samples, cfg.seed));
  return out;
}

}  // namespace linematch
