#include "linematch/commands.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "linematch/error.hpp"
#include "linematch/instance.hpp"
#include "linematch/run.hpp"

namespace linematch {
namespace {

using ordered_json = nlohmann::ordered_json;

template <typename F>
CommandOutput guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return CommandOutput{"", std::string(e.what()) + "\n", 2};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw Error(ErrorCode::BadParams, "format must be json or csv");
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "name,trials,violations,worst_margin,passed\n";
  for (const CheckReport& r : reports) {
    os << r.name << ',' << r.trials << ',' << r.violations << ',' << r.worst_margin << ','
       << (r.passed() ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace

CommandOutput run_command(const RunCommand& cmd) {
  return guarded([&] {
    check_format(cmd.format);
    ValidatedInstance v = validate_instance(load_instance(cmd.instance_path), cmd.strict);
    CommandOutput out;
    for (const std::string& w : v.warnings) out.diagnostics += "warning: " + w + "\n";
    if (cmd.reduction.mode == ReductionMode::None) {
      RunTranscript tr = run(v.instance, cmd.algorithm, cmd.seed);
      out.text = cmd.format == "csv" ? transcript_to_csv(tr) : transcript_to_json(tr);
    } else {
      ReducedRun rr = run_reduced(v.instance, cmd.algorithm, cmd.seed, cmd.reduction);
      out.text = cmd.format == "csv" ? transcript_to_csv(rr.inner) : reduced_run_to_json(rr);
    }
    return out;
  });
}

CommandOutput sweep_command(const SweepCommand& cmd) {
  return guarded([&] {
    ExperimentConfig cfg = config_from_json(read_file(cmd.config_path));
    if (cmd.seed) cfg.seed = *cmd.seed;
    if (cmd.n) cfg.sizes = {*cmd.n};
    if (cmd.trials) cfg.trials = *cmd.trials;
    if (cmd.algorithm) cfg.algorithms = {*cmd.algorithm};
    if (cmd.format) cfg.format = *cmd.format;
    validate_config(cfg);
    Report report = run_experiment(cfg);
    CommandOutput out;
    const std::string text = cfg.format == "csv" ? report_to_csv(report) : report_to_json(report);
    if (cfg.output.empty()) {
      out.text = text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw Error(ErrorCode::Io, "cannot write " + cfg.output);
      f << text;
      if (!f) throw Error(ErrorCode::Io, "cannot write " + cfg.output);
      out.diagnostics = "wrote " + cfg.output + "\n";
    }
    return out;
  });
}

CommandOutput verify_command(const VerifyConfig& cfg, const std::string& format) {
  return guarded([&] {
    check_format(format);
    const std::vector<CheckReport> reports = run_verify_battery(cfg);
    CommandOutput out;
    out.text = format == "csv" ? reports_to_csv(reports) : reports_to_json(reports);
    for (const CheckReport& r : reports) {
      if (!r.passed()) {
        out.exit_code = 1;
        out.diagnostics += "violation: " + r.name + "\n";
      }
    }
    return out;
  });
}

CommandOutput counterexample_command() {
  return guarded([&] {
    const DhCounterexample c = dh_counterexample_numbers();
    const CheckReport rep = reproduce_dh_counterexample();
    ordered_json j{{"servers", {0.0, 4.0, 11.0, 31.0}},
                   {"p_s3_given_s1", c.p_s3_given_s1},
                   {"p_s3_given_s2", c.p_s3_given_s2},
                   {"p_s4_given_s2", c.p_s4_given_s2},
                   {"expected_p_s4_given_s2", c.expected_p_s4_given_s2},
                   {"adjustment_p_right", c.adjustment_p_right},
                   {"adjustment_right_mass", c.adjustment_right_mass},
                   {"raw_p_s3_given_s2", c.raw_p_s3_given_s2},
                   {"raw_p_s4_given_s2", c.raw_p_s4_given_s2},
                   {"expected_raw_p_s4_given_s2", c.expected_raw_p_s4_given_s2},
                   {"leaves", c.leaves},
                   {"monotone", c.p_s3_given_s2 >= c.p_s3_given_s1},
                   {"passed", rep.passed()}};
    return CommandOutput{j.dump(2) + "\n", "", rep.passed() ? 0 : 1};
  });
}

CommandOutput gen_command(const GenCommand& cmd) {
  return guarded([&] { return CommandOutput{instance_to_json(generate_instance(cmd.kind, cmd.n, cmd.seed)), "", 0}; });
}

}  // namespace linematch
