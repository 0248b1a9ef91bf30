#include "linksched/network_state.hpp"

#include <algorithm>
#include <string>

#include "linksched/errors.hpp"
#include "linksched/kernels.hpp"

namespace linksched {

NetworkState NetworkState::empty(const Topology& topo) {
  NetworkState s;
  s.queue.assign(static_cast<std::size_t>(topo.link_count()), 0);
  s.served_prev.assign(static_cast<std::size_t>(topo.node_count()), 0);
  s.served_prev2.assign(static_cast<std::size_t>(topo.node_count()), 0);
  return s;
}

NetworkState NetworkState::with_queues(const Topology& topo, std::vector<std::int64_t> queues) {
  if (queues.size() != static_cast<std::size_t>(topo.link_count())) {
    throw UsageError("queue vector size does not match link count");
  }
  for (auto q : queues) {
    if (q < 0) throw UsageError("negative queue length");
  }
  NetworkState s = empty(topo);
  s.queue = std::move(queues);
  return s;
}

std::int64_t NetworkState::total_packets() const { return kernels::sum(queue); }

std::int64_t node_workload(const NetworkState& state, const Topology& topo, NodeId i) {
  if (i < 0 || i >= topo.node_count()) {
    throw UsageError("node id " + std::to_string(i) + " out of range");
  }
  std::int64_t total = 0;
  for (LinkId l : topo.incident(i)) total += state.queue[static_cast<std::size_t>(l)];
  return total;
}

std::vector<std::int64_t> node_workloads(const NetworkState& state, const Topology& topo) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(topo.node_count()), 0);
  const auto links = topo.links();
  for (std::size_t l = 0; l < links.size(); ++l) {
    w[static_cast<std::size_t>(links[l].u)] += state.queue[l];
    w[static_cast<std::size_t>(links[l].v)] += state.queue[l];
  }
  return w;
}

std::int64_t max_workload(const NetworkState& state, const Topology& topo) {
  return kernels::max_value(node_workloads(state, topo));
}

NodeClasses classify_workloads(std::span<const std::int64_t> workload) {
  NodeClasses c;
  const std::size_t n = workload.size();
  c.delta = kernels::max_value(workload);
  c.is_heavy.assign(n, 0);
  c.is_critical.assign(n, 0);
  kernels::classify(workload, c.delta, c.is_heavy, c.is_critical);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.is_critical[i]) c.critical.push_back(static_cast<NodeId>(i));
    if (c.is_heavy[i]) c.heavy.push_back(static_cast<NodeId>(i));
  }
  return c;
}

NodeClasses classify_nodes(const NetworkState& state, const Topology& topo) {
  return classify_workloads(node_workloads(state, topo));
}

void validate_schedule(const NetworkState& state, const Topology& topo, const Matching& schedule) {
  std::vector<std::uint8_t> used(static_cast<std::size_t>(topo.node_count()), 0);
  for (LinkId l : schedule) {
    if (l < 0 || l >= topo.link_count()) {
      throw ContractViolation("scheduled link " + std::to_string(l) + " does not exist");
    }
    if (state.queue[static_cast<std::size_t>(l)] <= 0) {
      throw ContractViolation("scheduled link " + std::to_string(l) + " has an empty queue");
    }
    const Link& e = topo.link(l);
    if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) {
      throw ContractViolation("scheduled link " + std::to_string(l) + " shares a node with another");
    }
    used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
  }
}

void add_arrivals(NetworkState& state, std::span<const std::int64_t> arrivals) {
  if (arrivals.size() != state.queue.size()) throw UsageError("arrival vector size mismatch");
  for (auto a : arrivals) {
    if (a < 0) throw ContractViolation("negative arrival count");
  }
  kernels::add_in_place(state.queue, arrivals);
}

void advance_slot(NetworkState& state, const Topology& topo, const Matching& schedule,
                  std::span<const std::int64_t> arrivals) {
  validate_schedule(state, topo, schedule);
  add_arrivals(state, arrivals);  // checks sizes before anything is mutated below
  state.served_prev2.swap(state.served_prev);
  std::fill(state.served_prev.begin(), state.served_prev.end(), std::uint8_t{0});
  for (LinkId l : schedule) {
    --state.queue[static_cast<std::size_t>(l)];
    const Link& e = topo.link(l);
    state.served_prev[static_cast<std::size_t>(e.u)] = 1;
    state.served_prev[static_cast<std::size_t>(e.v)] = 1;
  }
  ++state.slot;
}

NetworkState apply_slot(NetworkState state, const Topology& topo, const Matching& schedule,
                        std::span<const std::int64_t> arrivals) {
  advance_slot(state, topo, schedule, arrivals);
  return state;
}

}  // namespace linksched
