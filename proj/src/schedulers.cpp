#include "linksched/schedulers.hpp"

#include <string>

#include "linksched/errors.hpp"
#include "linksched/kernels.hpp"
#include "linksched/matching.hpp"

namespace linksched {
namespace {

// Frames are three slots long and aligned to slot 0.
bool is_frame_last_slot(std::int64_t slot) { return slot % 3 == 2; }

std::vector<std::uint8_t> eligible_links(const NetworkState& state) {
  std::vector<std::uint8_t> mask(state.queue.size(), 0);
  kernels::positive_mask(state.queue, mask);
  return mask;
}

}  // namespace

std::string_view policy_name(Policy p) {
  switch (p) {
    case Policy::nsb: return "nsb";
    case Policy::lcnsb: return "lcnsb";
    case Policy::mvm: return "mvm";
    case Policy::mwm: return "mwm";
    case Policy::gmm: return "gmm";
    case Policy::mm: return "mm";
  }
  return "?";
}

std::optional<Policy> parse_policy(std::string_view name) {
  for (Policy p : kAllPolicies) {
    if (policy_name(p) == name) return p;
  }
  return std::nullopt;
}

std::vector<Policy> parse_policy_list(std::string_view csv) {
  std::vector<Policy> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string_view tok = csv.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!tok.empty()) {
      const auto p = parse_policy(tok);
      if (!p) throw UsageError("unknown policy '" + std::string(tok) + "'");
      out.push_back(*p);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw UsageError("policy list is empty");
  return out;
}

std::uint8_t service_indicator(const NetworkState& state, NodeId i) {
  const auto idx = static_cast<std::size_t>(i);
  if (idx >= state.served_prev.size()) throw UsageError("node id " + std::to_string(i) + " out of range");
  if (is_frame_last_slot(state.slot)) return state.served_prev[idx] & state.served_prev2[idx];
  return state.served_prev[idx];
}

std::vector<std::uint8_t> service_indicators(const NetworkState& state) {
  std::vector<std::uint8_t> u(state.served_prev.size(), 0);
  kernels::service_indicator(state.served_prev, state.served_prev2, is_frame_last_slot(state.slot), u);
  return u;
}

std::vector<std::int64_t> nsb_weights(const NetworkState& state, const Topology& topo) {
  const std::vector<std::int64_t> workload = node_workloads(state, topo);
  const NodeClasses cls = classify_workloads(workload);
  const std::vector<std::uint8_t> u = service_indicators(state);
  std::vector<std::int64_t> w(workload.size(), 0);
  kernels::nsb_weights(workload, cls.is_heavy, u, w);
  return w;
}

std::vector<std::int64_t> lcnsb_weights(const NetworkState& state, const Topology& topo) {
  const NodeClasses cls = classify_nodes(state, topo);
  std::vector<std::int64_t> w(static_cast<std::size_t>(topo.node_count()), 1);
  if (cls.delta == 0) return w;
  const std::vector<std::uint8_t> u = service_indicators(state);
  kernels::lcnsb_weights(cls.is_heavy, cls.is_critical, u, w);
  return w;
}

Matching schedule(Policy policy, const NetworkState& state, const Topology& topo) {
  const std::vector<std::uint8_t> eligible = eligible_links(state);
  switch (policy) {
    case Policy::nsb:
      return max_vertex_weight_matching(topo, eligible, nsb_weights(state, topo));
    case Policy::lcnsb:
      return max_vertex_weight_matching(topo, eligible, lcnsb_weights(state, topo));
    case Policy::mvm:
      return max_vertex_weight_matching(topo, eligible, node_workloads(state, topo));
    case Policy::mwm:
      return max_weight_matching({&topo, eligible, state.queue});
    case Policy::gmm:
      return greedy_maximal_matching({&topo, eligible, state.queue});
    case Policy::mm:
      return maximal_matching(topo, eligible);
  }
  throw UsageError("unknown policy");
}

}  // namespace linksched
