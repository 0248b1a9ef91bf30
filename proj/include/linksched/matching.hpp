#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linksched/topology.hpp"

namespace linksched {

/// A topology with a per-link eligibility mask and nonnegative edge weights.
/// Weights of ineligible links are ignored.
struct WeightedGraphView {
  const Topology* topo = nullptr;
  std::span<const std::uint8_t> eligible;
  std::span<const std::int64_t> edge_weight;
};

/// Exact maximum-weight matching on the eligible links (general graphs).
///
/// Among optimal matchings the one preferring lower link ids is returned, and
/// any eligible link still addable afterwards is added, so the result is
/// maximal over eligible links.
Matching max_weight_matching(const WeightedGraphView& view);

/// Matching maximizing the summed weight of matched nodes.
///
/// Reduced to max_weight_matching with edge weight w_u + w_v. Ties between
/// nodes of equal weight favour the lower node id, so that whenever some
/// matching covers the s first nodes of the order (weight desc, id asc) the
/// result covers them as well.
Matching max_vertex_weight_matching(const Topology& topo, std::span<const std::uint8_t> eligible,
                                    std::span<const std::int64_t> node_weight);

/// Repeatedly takes the heaviest remaining eligible link that does not
/// conflict with earlier picks (ties: lower link id).
Matching greedy_maximal_matching(const WeightedGraphView& view);

/// First-fit over eligible links in ascending id order.
Matching maximal_matching(const Topology& topo, std::span<const std::uint8_t> eligible);

/// Adds, in ascending id order, every eligible link that conflicts with nothing
/// already in `m`. Keeps `m` sorted.
void complete_to_maximal(const Topology& topo, std::span<const std::uint8_t> eligible, Matching& m);

bool is_matching(const Topology& topo, const Matching& m);
bool is_maximal(const Topology& topo, std::span<const std::uint8_t> eligible, const Matching& m);

std::int64_t edge_weight_sum(const Matching& m, std::span<const std::int64_t> edge_weight);
std::int64_t matched_node_weight_sum(const Topology& topo, const Matching& m,
                                     std::span<const std::int64_t> node_weight);

/// Nodes covered by a matching, as a 0/1 mask.
std::vector<std::uint8_t> covered_nodes(const Topology& topo, const Matching& m);

/// Raw blossom entry point. `edges` are (u, v, w) with w >= 0; vertices are
/// [0, vertex_count). Returns mate[v] (-1 if unmatched).
struct WeightedEdge {
  std::int32_t u;
  std::int32_t v;
  std::int64_t w;
};
std::vector<std::int32_t> blossom_max_weight_matching(int vertex_count,
                                                      std::span<const WeightedEdge> edges);

}  // namespace linksched
