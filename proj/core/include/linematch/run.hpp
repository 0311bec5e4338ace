#pragma once

#include <cstdint>

#include "linematch/algorithms.hpp"
#include "linematch/instance.hpp"
#include "linematch/transcript.hpp"

namespace linematch {

/// Runs one algorithm over the whole request sequence. Servers are sorted
/// first and must be pairwise distinct (see the reductions module otherwise).
/// Deterministic in (instance, kind, seed).
RunTranscript run(const Instance& inst, AlgorithmKind kind, std::uint64_t seed, RunOptions options = {});

/// Same, drawing every random choice from `choices`; `seed` is only recorded.
RunTranscript run(const Instance& inst, AlgorithmKind kind, ChoiceSource& choices, RunOptions options = {},
                  std::uint64_t seed = 0);

/// Transcript of an algorithm that has served `inst.requests`.
RunTranscript finish_transcript(const OnlineAlgorithm& algo, const Instance& inst, std::uint64_t seed);

/// Sorted copy of the servers; throws BadParams when two coincide.
std::vector<double> distinct_servers(const std::vector<double>& servers);

}  // namespace linematch
