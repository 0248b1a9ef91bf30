#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linksched/topology.hpp"

namespace linksched {

/// Queue contents and recent service history of one run.
///
/// `served_prev[i]` is R_i(k-1) and `served_prev2[i]` is R_i(k-2), both
/// relative to the current slot k. Both start at zero (no service before
/// slot 0).
struct NetworkState {
  std::vector<std::int64_t> queue;  // per link, packets
  std::int64_t slot = 0;
  std::vector<std::uint8_t> served_prev;
  std::vector<std::uint8_t> served_prev2;

  static NetworkState empty(const Topology& topo);
  static NetworkState with_queues(const Topology& topo, std::vector<std::int64_t> queues);

  std::int64_t total_packets() const;
};

struct NodeClasses {
  std::int64_t delta = 0;            // max node workload
  std::vector<NodeId> critical;      // workload == delta
  std::vector<NodeId> heavy;         // n * workload >= (n-1) * delta
  std::vector<std::uint8_t> is_critical;
  std::vector<std::uint8_t> is_heavy;
};

/// Q_i(k): packets waiting on links incident to node i.
std::int64_t node_workload(const NetworkState& state, const Topology& topo, NodeId i);

/// Q_i(k) for every node.
std::vector<std::int64_t> node_workloads(const NetworkState& state, const Topology& topo);

/// Largest node workload, Δ(k).
std::int64_t max_workload(const NetworkState& state, const Topology& topo);

/// Critical and heavy sets. Both are empty when Δ = 0.
NodeClasses classify_nodes(const NetworkState& state, const Topology& topo);
NodeClasses classify_workloads(std::span<const std::int64_t> workload);

/// Throws ContractViolation unless `schedule` is a matching over links with a
/// nonzero queue.
void validate_schedule(const NetworkState& state, const Topology& topo, const Matching& schedule);

/// Serves one packet on every scheduled link, credits `arrivals` (which become
/// eligible in the next slot), shifts the service history and advances the slot.
void advance_slot(NetworkState& state, const Topology& topo, const Matching& schedule,
                  std::span<const std::int64_t> arrivals);

/// Value-returning form of advance_slot.
NetworkState apply_slot(NetworkState state, const Topology& topo, const Matching& schedule,
                        std::span<const std::int64_t> arrivals);

/// Credits arrivals without serving or advancing (used for slot-0 arrivals).
void add_arrivals(NetworkState& state, std::span<const std::int64_t> arrivals);

}  // namespace linksched
