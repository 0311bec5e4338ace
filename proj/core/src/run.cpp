#include "linematch/run.hpp"

#include <algorithm>

#include "linematch/error.hpp"
#include "linematch/matching.hpp"

namespace linematch {

std::vector<double> distinct_servers(const std::vector<double>& servers) {
  std::vector<double> s = servers;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw Error(ErrorCode::BadParams, "co-located servers: apply the perturbation reduction first");
  }
  return s;
}

RunTranscript finish_transcript(const OnlineAlgorithm& algo, const Instance& inst, std::uint64_t seed) {
  RunTranscript tr;
  tr.algorithm = std::string(to_string(algo.kind()));
  tr.seed = seed;
  tr.servers = algo.servers();
  tr.requests = inst.requests;
  tr.steps = algo.steps();
  if (algo.kind() == AlgorithmKind::DoubledHarmonic || algo.kind() == AlgorithmKind::ModifiedDoubledHarmonic) {
    tr.phases = build_phases(tr.steps, algo.triggers(), tr.servers);
  }
  for (const StepTrace& s : tr.steps) tr.online_cost += s.cost;
  tr.opt = optimal_partial_cost(inst.requests, tr.servers);
  tr.ratio = competitive_ratio(tr.online_cost, tr.opt);
  return tr;
}

RunTranscript run(const Instance& inst, AlgorithmKind kind, ChoiceSource& choices, RunOptions options,
                  std::uint64_t seed) {
  const std::vector<double> servers = distinct_servers(inst.servers);
  if (inst.requests.size() > servers.size()) throw Error(ErrorCode::TooManyRequests, "more requests than servers");
  auto algo = make_algorithm(kind, servers, choices, options);
  for (double x : inst.requests) algo->serve(x);
  return finish_transcript(*algo, inst, seed);
}

RunTranscript run(const Instance& inst, AlgorithmKind kind, std::uint64_t seed, RunOptions options) {
  SeededChoices choices(seed);
  return run(inst, kind, choices, options, seed);
}

}  // namespace linematch
