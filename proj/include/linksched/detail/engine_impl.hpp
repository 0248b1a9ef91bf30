#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "linksched/errors.hpp"
#include "linksched/network_state.hpp"

namespace linksched {

template <class ScheduleFn>
MetricsRecord run_evacuation_with(const EvacInstance& instance, Policy label, ScheduleFn&& fn,
                                  const EvacuationOptions& opts) {
  const Topology& topo = instance.topo;
  MetricsRecord rec;
  rec.mode = RunMode::evacuation;
  rec.policy = label;

  NetworkState state = NetworkState::with_queues(topo, instance.multiplicity);
  const std::vector<std::int64_t> no_arrivals(static_cast<std::size_t>(topo.link_count()), 0);
  rec.delta0 = max_workload(state, topo);

  // A maximal-matching scheduler needs at most 2Δ-1 slots.
  const std::int64_t limit = opts.max_slots.value_or(2 * rec.delta0 + 2);
  std::int64_t remaining = state.total_packets();
  while (remaining > 0) {
    if (state.slot >= limit) {
      throw ContractViolation("evacuation exceeded " + std::to_string(limit) + " slots");
    }
    Matching m = fn(state, topo);
    validate_schedule(state, topo, m);
    if (m.empty()) throw ContractViolation("empty schedule while packets remain");
    if (opts.record_trace) {
      rec.trace.push_back({state.slot, max_workload(state, topo), static_cast<std::int64_t>(m.size())});
    }
    remaining -= static_cast<std::int64_t>(m.size());
    advance_slot(state, topo, m, no_arrivals);
  }
  rec.evac_time = state.slot;
  if (opts.record_trace) rec.trace.push_back({state.slot, 0, 0});
  return rec;
}

}  // namespace linksched
