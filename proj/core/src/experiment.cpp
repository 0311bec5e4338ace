#include "linematch/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "linematch/error.hpp"
#include "linematch/run.hpp"

namespace linematch {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<PhaseSummary> summarize_phases(const RunTranscript& tr) {
  std::vector<PhaseSummary> out;
  for (const PhaseRecord& p : tr.phases) {
    PhaseSummary s;
    s.index = p.index;
    s.z_exponent = p.z_exponent;
    s.requests = p.steps.size();
    s.assigned_cost = p.assigned_cost;
    if (p.opening_trigger) s.trigger_cost = p.opening_trigger->assigned_cost;
    out.push_back(s);
  }
  return out;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::BadParams, "trials must be at least 1");
  if (cfg.generators.empty() || cfg.sizes.empty() || cfg.algorithms.empty()) {
    throw Error(ErrorCode::BadParams, "generators, sizes and algorithms must be non-empty");
  }
  for (std::size_t n : cfg.sizes)
    if (n < 2) throw Error(ErrorCode::BadParams, "every n must be at least 2");
  if (cfg.format != "json" && cfg.format != "csv") throw Error(ErrorCode::BadParams, "format must be json or csv");
}

ExperimentConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("generators")) {
      cfg.generators.clear();
      for (const auto& g : j["generators"]) cfg.generators.push_back(parse_generator(g.get<std::string>()));
    }
    if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<std::size_t>>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const auto& a : j["algorithms"]) cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    if (j.contains("reduction")) {
      const auto& r = j["reduction"];
      if (r.contains("mode")) cfg.reduction.mode = parse_reduction(r["mode"].get<std::string>());
      if (r.contains("epsilon")) cfg.reduction.epsilon = r["epsilon"].get<double>();
    }
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  validate_config(cfg);
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  ordered_json gens = ordered_json::array();
  for (auto g : cfg.generators) gens.push_back(to_string(g));
  ordered_json algos = ordered_json::array();
  for (auto a : cfg.algorithms) algos.push_back(to_string(a));
  ordered_json j{{"generators", gens},
                 {"sizes", cfg.sizes},
                 {"trials", cfg.trials},
                 {"seed", cfg.seed},
                 {"algorithms", algos},
                 {"reduction", {{"mode", to_string(cfg.reduction.mode)}, {"epsilon", cfg.reduction.epsilon}}},
                 {"output", cfg.output},
                 {"format", cfg.format}};
  return j.dump(2) + "\n";
}

std::uint64_t trial_seed(std::uint64_t seed, GeneratorKind kind, std::size_t n, std::size_t trial) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

Report run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  Report report;
  report.config = cfg;
  std::size_t trial_id = 0;
  for (GeneratorKind g : cfg.generators) {
    for (std::size_t n : cfg.sizes) {
      for (std::size_t k = 0; k < cfg.trials; ++k, ++trial_id) {
        const std::uint64_t seed = trial_seed(cfg.seed, g, n, k);
        const Instance inst = generate_instance(g, n, seed);
        for (AlgorithmKind a : cfg.algorithms) {
          TrialRow row;
          row.trial = trial_id;
          row.generator = std::string(to_string(g));
          row.n = n;
          row.seed = seed;
          row.digest = instance_digest(inst);
          row.algorithm = std::string(to_string(a));
          RunTranscript tr;
          if (cfg.reduction.mode == ReductionMode::None) {
            tr = run(inst, a, seed);
            row.online_cost = tr.online_cost;
            row.opt = tr.opt;
            row.ratio = tr.ratio;
          } else {
            ReducedRun rr = run_reduced(inst, a, seed, cfg.reduction);
            row.online_cost = rr.online_cost;
            row.opt = rr.opt;
            row.ratio = rr.ratio;
            tr = std::move(rr.inner);
          }
          row.phases = summarize_phases(tr);
          row.triggers = row.phases.empty() ? 0 : row.phases.size() - 1;
          report.rows.push_back(std::move(row));
        }
      }
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const TrialRow& a, const TrialRow& b) { return a.trial < b.trial; });
  summarize(report);
  return report;
}

void summarize(Report& report) {
  report.aggregates.clear();
  report.fits.clear();
  std::map<std::tuple<std::string, std::string, std::size_t>, Aggregate> groups;
  for (const TrialRow& r : report.rows) {
    Aggregate& a = groups[{r.generator, r.algorithm, r.n}];
    a.generator = r.generator;
    a.algorithm = r.algorithm;
    a.n = r.n;
    ++a.trials;
    a.mean_ratio += r.ratio;
    a.max_ratio = std::max(a.max_ratio, r.ratio);
  }
  std::map<std::pair<std::string, std::string>, std::vector<const Aggregate*>> by_family;
  for (auto& [key, a] : groups) {
    a.mean_ratio /= static_cast<double>(a.trials);
    report.aggregates.push_back(a);
  }
  for (const Aggregate& a : report.aggregates) by_family[{a.generator, a.algorithm}].push_back(&a);
  for (const auto& [key, aggs] : by_family) {
    SlopeFit fit;
    fit.generator = key.first;
    fit.algorithm = key.second;
    const double m = static_cast<double>(aggs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const Aggregate* a : aggs) {
      const double x = std::log2(static_cast<double>(a->n));
      sx += x;
      sy += a->mean_ratio;
      sxx += x * x;
      sxy += x * a->mean_ratio;
    }
    const double denom = m * sxx - sx * sx;
    if (aggs.size() >= 2 && denom > 0.0) {
      fit.slope = (m * sxy - sx * sy) / denom;
      fit.intercept = (sy - fit.slope * sx) / m;
    } else {
      fit.intercept = sy / m;
    }
    report.fits.push_back(fit);
  }
}

std::string report_to_json(const Report& report) {
  ordered_json rows = ordered_json::array();
  for (const TrialRow& r : report.rows) {
    ordered_json phases = ordered_json::array();
    for (const PhaseSummary& p : r.phases) {
      phases.push_back(ordered_json{{"index", p.index},
                                    {"z_exponent", p.z_exponent},
                                    {"requests", p.requests},
                                    {"assigned_cost", p.assigned_cost},
                                    {"trigger_cost", p.trigger_cost}});
    }
    rows.push_back(ordered_json{{"trial", r.trial},
                                {"generator", r.generator},
                                {"n", r.n},
                                {"seed", r.seed},
                                {"digest", r.digest},
                                {"algorithm", r.algorithm},
                                {"online_cost", r.online_cost},
                                {"opt", r.opt},
                                {"ratio", r.ratio},
                                {"triggers", r.triggers},
                                {"phases", phases}});
  }
  ordered_json aggs = ordered_json::array();
  for (const Aggregate& a : report.aggregates) {
    aggs.push_back(ordered_json{{"generator", a.generator},
                                {"algorithm", a.algorithm},
                                {"n", a.n},
                                {"trials", a.trials},
                                {"mean_ratio", a.mean_ratio},
                                {"max_ratio", a.max_ratio}});
  }
  ordered_json fits = ordered_json::array();
  for (const SlopeFit& f : report.fits) {
    fits.push_back(ordered_json{
        {"generator", f.generator}, {"algorithm", f.algorithm}, {"slope", f.slope}, {"intercept", f.intercept}});
  }
  ordered_json out{{"config", ordered_json::parse(config_to_json(report.config))},
                   {"rows", rows},
                   {"aggregates", aggs},
                   {"fits", fits}};
  return out.dump(2) + "\n";
}

std::string report_to_csv(const Report& report) {
  std::ostringstream os;
  os << "trial,generator,n,seed,digest,algorithm,online_cost,opt,ratio,triggers\n";
  for (const TrialRow& r : report.rows) {
    os << r.trial << ',' << r.generator << ',' << r.n << ',' << r.seed << ',' << r.digest << ',' << r.algorithm << ','
       << csv_number(r.online_cost) << ',' << csv_number(r.opt) << ',' << csv_number(r.ratio) << ',' << r.triggers
       << '\n';
  }
  return os.str();
}

}  // namespace linematch
