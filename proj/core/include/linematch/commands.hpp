#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linematch/experiment.hpp"
#include "linematch/verify.hpp"

namespace linematch {

/// What a CLI subcommand prints on stdout, its diagnostics for stderr, and
/// its exit code.
struct CommandOutput {
  std::string text;
  std::string diagnostics;
  int exit_code = 0;
};

struct RunCommand {
  std::string instance_path;
  AlgorithmKind algorithm = AlgorithmKind::ModifiedDoubledHarmonic;
  std::uint64_t seed = 0;
  std::string format = "json";
  bool strict = false;
  ReductionConfig reduction;
};

struct SweepCommand {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::size_t> trials;
  std::optional<AlgorithmKind> algorithm;
  std::optional<std::string> format;
};

struct GenCommand {
  GeneratorKind kind = GeneratorKind::Uniform;
  std::size_t n = 16;
  std::uint64_t seed = 0;
};

/// Errors from the library are reported as diagnostics with exit code 2.
CommandOutput run_command(const RunCommand& cmd);
CommandOutput sweep_command(const SweepCommand& cmd);
/// Exit code 1 when any check has a violation.
CommandOutput verify_command(const VerifyConfig& cfg, const std::string& format);
CommandOutput counterexample_command();
CommandOutput gen_command(const GenCommand& cmd);

}  // namespace linematch
