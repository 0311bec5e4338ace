#include <cmath>

#include "linematch/algorithms.hpp"
#include "linematch/error.hpp"

namespace linematch {

DhStepOutcome dh_step(LineState& state, RunContext& ctx, std::size_t t, ChoiceSource& rng) {
  if (state.available_count() == 0) throw Error(ErrorCode::NoAvailableServer, "no server left");
  const double x = ctx.requests().at(t - 1);
  const auto& servers = state.servers();
  DhStepOutcome out;
  out.opt = ctx.opt(t);
  out.z_exponent_before = state.z_exponent();
  if (out.opt >= state.z()) {
    out.trigger = true;
    state.set_z_exponent(exponent_above(out.opt));
    out.adjustment = ctx.simulation(t - 1);
    state.reset_imaginary(out.adjustment->free_servers);
  }
  out.z_exponent_after = state.z_exponent();
  state.set_opt_to_date(out.opt);

  const std::size_t before = rng.draws();
  if (auto at = state.imaginary_at(x)) {
    out.imaginary_target = *at;
    out.case_id = "colocated";
  } else {
    const auto il = state.imaginary_left(x);
    const auto ir = state.imaginary_right(x);
    if (!il) {
      out.imaginary_target = *ir;
      out.case_id = "one-sided-right";
    } else if (!ir) {
      out.imaginary_target = *il;
      out.case_id = "one-sided-left";
    } else {
      const PseudoMetric metric(servers, state.z(), ctx.pd_mode());
      const double p = imaginary_right_probability(metric, servers, x, *il, *ir);
      out.p_right = p;
      out.imaginary_target = rng.bernoulli(p) ? *ir : *il;
      out.case_id = "harmonic";
    }
  }
  out.draws = rng.draws() - before;
  out.corrective_target = state.partner_of_imaginary(out.imaginary_target);
  out.server = out.corrective_target;
  state.drop_imaginary(out.imaginary_target);
  state.take(out.server);
  return out;
}

DhSimulation simulate_dh(RunContext& ctx, std::size_t len, ChoiceSource& rng) {
  LineState state(ctx.servers());
  DhSimulation sim;
  for (std::size_t t = 1; t <= len; ++t) {
    const DhStepOutcome o = dh_step(state, ctx, t, rng);
    sim.assigned.push_back(o.server);
    sim.imaginary_moves.push_back(o.imaginary_target);
    sim.p_right.push_back(o.p_right ? *o.p_right : std::nan(""));
    sim.cost += std::abs(ctx.requests()[t - 1] - ctx.servers()[o.server]);
  }
  sim.free_servers = state.available_indices();
  sim.z_exponent = state.z_exponent();
  return sim;
}

std::shared_ptr<const DhSimulation> RunContext::simulation(std::size_t len) {
  if (len > requests_.size()) throw Error(ErrorCode::IndexOutOfRange, "prefix longer than revealed requests");
  auto it = sims_.find(len);
  if (it != sims_.end()) return it->second;
  auto sim = std::make_shared<const DhSimulation>(simulate_dh(*this, len, root_->child(len)));
  sims_.emplace(len, sim);
  return sim;
}

DoubledHarmonic::DoubledHarmonic(std::span<const double> sorted_servers, ChoiceSource& rng, RunOptions options)
    : ctx_(std::vector<double>(sorted_servers.begin(), sorted_servers.end()), options.pd_mode, rng),
      state_(sorted_servers),
      options_(options) {}

std::size_t DoubledHarmonic::serve(double x) {
  StepTrace s;
  if (options_.record_sets) s.before = SetSnapshot{state_.available_positions(), state_.imaginary_positions()};
  ctx_.reveal(x);
  const std::size_t t = ctx_.requests().size();
  const DhStepOutcome o = dh_step(state_, ctx_, t, ctx_.root());
  const auto& servers = state_.servers();
  s.t = t;
  s.request = x;
  s.case_id = o.case_id;
  s.server = o.server;
  s.server_position = servers[o.server];
  s.cost = std::abs(x - s.server_position);
  s.trigger = o.trigger;
  s.z_exponent_before = o.z_exponent_before;
  s.z_exponent_after = o.z_exponent_after;
  s.opt_to_date = o.opt;
  s.imaginary_server = o.imaginary_target;
  s.corrective_target = o.corrective_target;
  s.p_right = o.p_right;
  s.draws = o.draws;
  if (o.trigger) {
    TriggerRecord r;
    r.t = t;
    r.assigned_server = o.server;
    r.assigned_cost = s.cost;
    r.imaginary_move = o.imaginary_target;
    r.imaginary_cost = std::abs(x - servers[o.imaginary_target]);
    r.simulated_assignments = o.adjustment->assigned;
    r.simulated_imaginary_moves = o.adjustment->imaginary_moves;
    for (double p : o.adjustment->p_right) r.simulated_p_right.push_back(std::isnan(p) ? std::nullopt : std::optional(p));
    r.simulated_cost = o.adjustment->cost;
    triggers_.push_back(std::move(r));
  }
  steps_.push_back(std::move(s));
  return o.server;
}

}  // namespace linematch
