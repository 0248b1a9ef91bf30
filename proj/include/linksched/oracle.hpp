#pragma once

// Exhaustive matching search, the reference the exact matchers are checked
// against. Independent of the blossom code path.

#include <cstdint>
#include <span>

#include "linksched/topology.hpp"

namespace linksched {

enum class OracleScoring { edge_sum, matched_node_sum };

struct OracleResult {
  std::int64_t best_score = 0;
  Matching matching;
};

inline constexpr int kOracleMaxLinks = 20;

/// Enumerates every matching of the eligible links. `weights` are per link for
/// edge_sum and per node for matched_node_sum. Throws UsageError when more than
/// kOracleMaxLinks links are eligible.
OracleResult brute_force_matching_oracle(const Topology& topo, std::span<const std::uint8_t> eligible,
                                         OracleScoring scoring, std::span<const std::int64_t> weights);

/// True iff some matching of the eligible links covers every node in `nodes`.
bool oracle_can_cover(const Topology& topo, std::span<const std::uint8_t> eligible,
                      std::span<const NodeId> nodes);

}  // namespace linksched
