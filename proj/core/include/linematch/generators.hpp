#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "linematch/instance.hpp"

namespace linematch {

enum class GeneratorKind { Uniform, Clustered, GeometricGaps, HarmonicAdversary };

std::string_view to_string(GeneratorKind kind);
/// Accepts "uniform", "clustered", "geometric", "adversary". Throws BadParams.
GeneratorKind parse_generator(std::string_view name);

/// n distinct servers at least 1 apart and n requests on server locations,
/// deterministic in (kind, n, seed). Throws BadParams for n < 2.
///
/// Uniform: gaps uniform in [1, 10], requests at uniformly random servers.
/// Clustered: groups of about 8 servers with gaps in [1, 2], groups 20 to 200
///   apart; most requests hit one group.
/// GeometricGaps: gaps 1, 2, 4, ..., 2^(n-2); requests at random servers.
/// HarmonicAdversary: a server 1.5 left of p_1, then p_1 < p_2 < ... with each
///   gap slightly shorter than the distance back to the leftmost server, and
///   requests p_1, p_1, p_2, ..., p_(n-1), so greedy cascades rightwards.
Instance generate_instance(GeneratorKind kind, std::size_t n, std::uint64_t seed);

}  // namespace linematch
