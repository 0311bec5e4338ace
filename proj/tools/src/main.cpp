#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "linematch/commands.hpp"
#include "linematch/error.hpp"

namespace {

int emit(const linematch::CommandOutput& out, const std::string& path) {
  std::cerr << out.diagnostics;
  if (path.empty()) {
    std::cout << out.text;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "Io: cannot write " << path << "\n";
      return 2;
    }
    f << out.text;
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace linematch;

  CLI::App app{"Online min-cost matching on the line"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string algo = "mdh";
  std::string format = "json";
  std::string output;
  bool strict = false;

  auto* run_cmd = app.add_subcommand("run", "Serve one instance file and print the transcript");
  std::string instance_path;
  std::string reduce = "none";
  double epsilon = 0.0;
  run_cmd->add_option("instance", instance_path, "Instance JSON file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", seed, "Random seed");
  run_cmd->add_option("--algo", algo, "greedy, harmonic, dh or mdh");
  run_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  run_cmd->add_flag("--strict", strict, "Enforce unit gaps and on-server requests");
  run_cmd->add_option("--reduce", reduce, "none, perturb, snap or both")
      ->check(CLI::IsMember({"none", "perturb", "snap", "both"}));
  run_cmd->add_option("--epsilon", epsilon, "Perturbation window, 0 picks 1/(5n)");
  run_cmd->add_option("-o,--output", output, "Write to a file instead of stdout");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment config and print the report");
  std::string config_path;
  std::optional<std::uint64_t> sweep_seed;
  std::optional<std::size_t> sweep_n, sweep_trials;
  std::optional<std::string> sweep_algo, sweep_format;
  sweep_cmd->add_option("config", config_path, "ExperimentConfig JSON file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--seed", sweep_seed, "Override the config seed");
  sweep_cmd->add_option("--n", sweep_n, "Override sizes with a single n");
  sweep_cmd->add_option("--trials", sweep_trials, "Override the trial count");
  sweep_cmd->add_option("--algo", sweep_algo, "Override the algorithm list");
  sweep_cmd->add_option("--format", sweep_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification battery");
  VerifyConfig vcfg;
  verify_cmd->add_option("--seed", vcfg.seed, "Battery seed");
  verify_cmd->add_option("--states", vcfg.monotonicity_states, "Reachable states for the monotonicity check");
  verify_cmd->add_option("--grid", vcfg.grid, "Grid points per interval");
  verify_cmd->add_option("--trials", vcfg.potential_runs, "Runs for the potential check");
  verify_cmd->add_option("--facts", vcfg.n_fact_samples, "Samples per N fact");
  verify_cmd->add_option("--oracles", vcfg.oracle_trials, "Cases per oracle comparison");
  verify_cmd->add_option("--cases", vcfg.distribution_cases, "Cases for distribution consistency");
  verify_cmd->add_option("--samples", vcfg.distribution_samples, "Samples per distribution case");
  verify_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("-o,--output", output, "Write to a file instead of stdout");

  auto* ce_cmd = app.add_subcommand("counterexample", "Reproduce the Doubled Harmonic non-monotonicity example");
  ce_cmd->add_option("-o,--output", output, "Write to a file instead of stdout");

  auto* gen_cmd = app.add_subcommand("gen", "Emit a generated instance");
  std::string kind = "uniform";
  std::size_t n = 16;
  gen_cmd->add_option("--kind", kind, "uniform, clustered, geometric or adversary")
      ->check(CLI::IsMember({"uniform", "clustered", "geometric", "adversary"}));
  gen_cmd->add_option("--n", n, "Number of servers");
  gen_cmd->add_option("--seed", seed, "Generator seed");
  gen_cmd->add_option("-o,--output", output, "Write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      RunCommand cmd;
      cmd.instance_path = instance_path;
      cmd.algorithm = parse_algorithm(algo);
      cmd.seed = seed;
      cmd.format = format;
      cmd.strict = strict;
      cmd.reduction.mode = parse_reduction(reduce);
      cmd.reduction.epsilon = epsilon;
      return emit(run_command(cmd), output);
    }
    if (*sweep_cmd) {
      SweepCommand cmd;
      cmd.config_path = config_path;
      cmd.seed = sweep_seed;
      cmd.n = sweep_n;
      cmd.trials = sweep_trials;
      if (sweep_algo) cmd.algorithm = parse_algorithm(*sweep_algo);
      cmd.format = sweep_format;
      return emit(sweep_command(cmd), "");
    }
    if (*verify_cmd) return emit(verify_command(vcfg, format), output);
    if (*ce_cmd) return emit(counterexample_command(), output);
    if (*gen_cmd) {
      GenCommand cmd;
      cmd.kind = parse_generator(kind);
      cmd.n = n;
      cmd.seed = seed;
      return emit(gen_command(cmd), output);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
