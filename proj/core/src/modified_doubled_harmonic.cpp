#include <cmath>

#include "linematch/algorithms.hpp"
#include "linematch/error.hpp"
#include "linematch/matching.hpp"

namespace linematch {

struct ModifiedDoubledHarmonic::Cache {
  std::vector<double> available;
  std::vector<double> imaginary;
  IslandPartition islands;
  OptProfile profile;
  /// Sorted-pairing partner of each imaginary server (indexed by server).
  std::vector<std::size_t> partner;
};

ModifiedDoubledHarmonic::ModifiedDoubledHarmonic(std::span<const double> sorted_servers, ChoiceSource& rng,
                                                 RunOptions options)
    : ctx_(std::vector<double>(sorted_servers.begin(), sorted_servers.end()), options.pd_mode, rng),
      state_(sorted_servers),
      rng_(&rng),
      options_(options) {}

const ModifiedDoubledHarmonic::Cache& ModifiedDoubledHarmonic::cache() const {
  if (!cache_) {
    std::vector<double> available = state_.available_positions();
    std::vector<double> imaginary = state_.imaginary_positions();
    IslandPartition islands = decompose_islands(imaginary, available);
    OptProfile profile(ctx_.requests(), state_.servers());
    std::vector<std::size_t> partner(state_.size(), state_.size());
    const auto avail_idx = state_.available_indices();
    const auto imag_idx = state_.imaginary_indices();
    for (std::size_t k = 0; k < imag_idx.size(); ++k) partner[imag_idx[k]] = avail_idx[k];
    cache_ = std::make_shared<Cache>(Cache{std::move(available), std::move(imaginary), std::move(islands),
                                           std::move(profile), std::move(partner)});
  }
  return *cache_;
}

const IslandPartition& ModifiedDoubledHarmonic::islands() const { return cache().islands; }
const OptProfile& ModifiedDoubledHarmonic::profile() const { return cache().profile; }

bool ModifiedDoubledHarmonic::is_trigger(double x) const { return cache().profile.cost_with(x) >= state_.z(); }

TriggerContext ModifiedDoubledHarmonic::trigger_context(std::size_t left_server, std::size_t right_server) const {
  const auto& s = state_.servers();
  return TriggerContext{&cache().profile, state_.z(), s[left_server], s[right_server]};
}

double ModifiedDoubledHarmonic::right_rule(double y) const {
  const Cache& c = cache();
  const auto& s = state_.servers();
  switch (c.islands.classify(y)) {
    case IslandKind::Left: return 0.0;
    case IslandKind::Right: return 1.0;
    case IslandKind::Stationary: break;
  }
  if (auto im = state_.imaginary_at(y)) return s[c.partner[*im]] > y ? 1.0 : 0.0;
  const auto il = state_.imaginary_left(y);
  const auto ir = state_.imaginary_right(y);
  if (!il) return 1.0;
  if (!ir) return 0.0;
  const PseudoMetric metric(s, state_.z(), options_.pd_mode);
  return imaginary_right_probability(metric, s, y, *il, *ir);
}

double ModifiedDoubledHarmonic::nontrigger_right(double y) const {
  if (state_.available_at(y) || !state_.available_left(y) || !state_.available_right(y)) {
    throw Error(ErrorCode::DomainError, "y must lie strictly between two available servers");
  }
  return right_rule(y);
}

MdhPlan ModifiedDoubledHarmonic::plan(double x) const {
  if (state_.available_count() == 0) throw Error(ErrorCode::NoAvailableServer, "no server left");
  const Cache& c = cache();
  MdhPlan p;
  p.opt_with = c.profile.cost_with(x);
  p.trigger = p.opt_with >= state_.z();
  p.island = c.islands.classify(x);
  if (auto at = state_.available_at(x)) {
    p.case_id = "1";
    p.left_server = p.right_server = *at;
    return p;
  }
  const auto al = state_.available_left(x);
  const auto ar = state_.available_right(x);
  if (!al) {
    p.case_id = "2";
    p.left_server = p.right_server = *ar;
    p.p_right = 1.0;
    return p;
  }
  if (!ar) {
    p.case_id = "3";
    p.left_server = p.right_server = *al;
    return p;
  }
  p.left_server = *al;
  p.right_server = *ar;
  if (!p.trigger) {
    p.case_id = p.island == IslandKind::Left ? "4a" : p.island == IslandKind::Right ? "4b" : "4c";
    p.p_right = right_rule(x);
    return p;
  }
  const TriggerContext ctx = trigger_context(*al, *ar);
  const TriggerBoundaries b = trigger_boundaries(ctx, x);
  p.y_left = b.y_left;
  p.y_right = b.y_right;
  const auto& s = state_.servers();
  const double p_left_end = b.y_left <= s[*al] ? 0.0 : right_rule(b.y_left);
  const double p_right_end = b.y_right >= s[*ar] ? 1.0 : right_rule(b.y_right);
  if (p_right_end < 0.5) {
    p.case_id = "5a";
    p.mimic_point = b.y_right;
    p.p_right = p_right_end;
  } else if (p_left_end > 0.5) {
    p.case_id = "5b";
    p.mimic_point = b.y_left;
    p.p_right = p_left_end;
  } else if (x < ctx.midpoint()) {
    p.case_id = "5c";
    p.mimic_point = b.y_left;
    p.p_right = p_left_end;
  } else {
    p.case_id = "5d";
    p.mimic_point = b.y_right;
    p.p_right = p_right_end;
  }
  return p;
}

AssignmentDistribution ModifiedDoubledHarmonic::next_distribution(double x) const {
  const MdhPlan p = plan(x);
  AssignmentDistribution d;
  if (p.left_server == p.right_server) {
    d.support.emplace_back(p.left_server, 1.0);
    return d;
  }
  if (p.p_right < 1.0) d.support.emplace_back(p.left_server, 1.0 - p.p_right);
  if (p.p_right > 0.0) d.support.emplace_back(p.right_server, p.p_right);
  return d;
}

MdhDecision ModifiedDoubledHarmonic::decide(double x, ChoiceSource& rng) const {
  MdhDecision d;
  d.plan = plan(x);
  const std::size_t before = rng.draws();
  d.server = d.plan.left_server;
  if (d.plan.left_server != d.plan.right_server && rng.bernoulli(d.plan.p_right)) d.server = d.plan.right_server;
  if (!d.plan.trigger) {
    const auto& s = state_.servers();
    const double pos = s[d.server];
    if (auto at = state_.imaginary_at(x)) {
      d.gamma = *at;
    } else if (d.plan.island == IslandKind::Stationary && pos != x) {
      d.gamma = pos > x ? state_.imaginary_right(x) : state_.imaginary_left(x);
    } else {
      const auto il = state_.imaginary_left(x);
      const auto ir = state_.imaginary_right(x);
      if (!il) {
        d.gamma = ir;
      } else if (!ir) {
        d.gamma = il;
      } else {
        const PseudoMetric metric(s, state_.z(), options_.pd_mode);
        d.gamma = rng.bernoulli(imaginary_right_probability(metric, s, x, *il, *ir)) ? *ir : *il;
      }
    }
    if (!d.gamma) throw Error(ErrorCode::NoAvailableServer, "no imaginary server in the required direction");
  }
  d.draws = rng.draws() - before;
  return d;
}

void ModifiedDoubledHarmonic::commit(double x, const MdhDecision& d) {
  const Cache& c = cache();
  const auto& s = state_.servers();
  const std::size_t t = ctx_.requests().size() + 1;
  StepTrace st;
  st.t = t;
  st.request = x;
  st.case_id = d.plan.case_id;
  st.server = d.server;
  st.server_position = s[d.server];
  st.cost = std::abs(x - st.server_position);
  st.trigger = d.plan.trigger;
  st.z_exponent_before = state_.z_exponent();
  st.y_left = d.plan.y_left;
  st.y_right = d.plan.y_right;
  st.mimic_point = d.plan.mimic_point;
  if (d.plan.left_server != d.plan.right_server) st.p_right = d.plan.p_right;
  st.draws = d.draws;
  if (options_.record_sets) st.before = SetSnapshot{c.available, c.imaginary};
  const double d_before = d.plan.trigger ? 0.0 : sorted_pairing_cost(c.available, c.imaginary);

  state_.take(d.server);
  if (!d.plan.trigger) state_.drop_imaginary(*d.gamma);
  cache_.reset();
  ctx_.reveal(x);
  ctx_.record_opt(t, d.plan.opt_with);
  state_.set_opt_to_date(d.plan.opt_with);
  st.opt_to_date = d.plan.opt_with;

  if (d.plan.trigger) {
    state_.set_z_exponent(exponent_above(d.plan.opt_with));
    const auto sim = ctx_.simulation(t);
    state_.reset_imaginary(sim->free_servers);
    phase_carry_ = 0.0;
    TriggerRecord r;
    r.t = t;
    r.assigned_server = d.server;
    r.assigned_cost = st.cost;
    r.imaginary_move = sim->imaginary_moves[t - 1];
    r.imaginary_cost = std::abs(x - s[r.imaginary_move]);
    r.simulated_assignments.assign(sim->assigned.begin(), sim->assigned.end() - 1);
    r.simulated_imaginary_moves.assign(sim->imaginary_moves.begin(), sim->imaginary_moves.end() - 1);
    double simulated_cost = 0.0;
    for (std::size_t k = 0; k + 1 < t; ++k) {
      const double p = sim->p_right[k];
      r.simulated_p_right.push_back(std::isnan(p) ? std::nullopt : std::optional(p));
      simulated_cost += std::abs(ctx_.requests()[k] - s[sim->assigned[k]]);
    }
    r.simulated_cost = simulated_cost;
    st.imaginary_server = r.imaginary_move;
    triggers_.push_back(std::move(r));
  } else {
    st.imaginary_server = d.gamma;
    PotentialRecord pr;
    pr.d_before = d_before;
    pr.d_after = sorted_pairing_cost(state_.available_positions(), state_.imaginary_positions());
    pr.d_sigma = st.cost;
    pr.d_gamma = std::abs(x - s[*d.gamma]);
    pr.g_before = d_before + phase_carry_;
    phase_carry_ += pr.d_sigma - pr.d_gamma;
    pr.g_after = pr.d_after + phase_carry_;
    st.potential = pr;
  }
  st.z_exponent_after = state_.z_exponent();
  steps_.push_back(std::move(st));
}

std::size_t ModifiedDoubledHarmonic::serve(double x) {
  const MdhDecision d = decide(x, *rng_);
  commit(x, d);
  return d.server;
}

}  // namespace linematch
