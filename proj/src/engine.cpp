#include "linksched/engine.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "linksched/errors.hpp"
#include "linksched/kernels.hpp"
#include "linksched/network_state.hpp"

namespace linksched {

std::int64_t EvacInstance::total_packets() const { return kernels::sum(multiplicity); }

std::int64_t EvacInstance::max_degree() const {
  return max_workload(NetworkState::with_queues(topo, multiplicity), topo);
}

double MetricsRecord::min_departure_ratio() const {
  double worst = 1.0;
  for (std::size_t l = 0; l < arrivals.size(); ++l) {
    if (arrivals[l] == 0) continue;
    worst = std::min(worst, static_cast<double>(departures[l]) / static_cast<double>(arrivals[l]));
  }
  return worst;
}

MetricsRecord run_evacuation(const EvacInstance& instance, Policy policy, const EvacuationOptions& opts) {
  return run_evacuation_with(
      instance, policy, [policy](const NetworkState& s, const Topology& t) { return schedule(policy, s, t); },
      opts);
}

MetricsRecord run_throughput(const Topology& topo, Policy policy, const TrafficModel& traffic,
                             std::int64_t total_slots, std::int64_t warmup_slots) {
  if (total_slots <= 0) throw UsageError("total slots must be positive");
  if (warmup_slots < 0 || warmup_slots >= total_slots) throw UsageError("warmup must lie in [0, total slots)");

  const auto m = static_cast<std::size_t>(topo.link_count());
  const ArrivalSampler sampler(traffic);
  MetricsRecord rec;
  rec.mode = RunMode::throughput;
  rec.policy = policy;
  rec.total_slots = total_slots;
  rec.warmup_slots = warmup_slots;
  rec.arrivals.assign(m, 0);
  rec.departures.assign(m, 0);

  NetworkState state = NetworkState::empty(topo);
  std::vector<std::int64_t> incoming(m, 0);
  sampler.sample(0, incoming);
  add_arrivals(state, incoming);
  kernels::add_in_place(rec.arrivals, incoming);
  std::int64_t total_queue = state.total_packets();

  const std::int64_t q3_begin = total_slots / 2;
  const std::int64_t q4_begin = (3 * total_slots) / 4;
  double measured = 0.0;
  double q3 = 0.0;
  double q4 = 0.0;

  for (std::int64_t k = 0; k < total_slots; ++k) {
    const Matching sched = schedule(policy, state, topo);
    for (LinkId l : sched) ++rec.departures[static_cast<std::size_t>(l)];
    total_queue -= static_cast<std::int64_t>(sched.size());

    // Queue sampled at slot end: after service, before the next slot's arrivals.
    const auto sample = static_cast<double>(total_queue);
    if (k >= warmup_slots) measured += sample;
    if (k >= q4_begin) {
      q4 += sample;
    } else if (k >= q3_begin) {
      q3 += sample;
    }

    if (k + 1 < total_slots) {
      sampler.sample(k + 1, incoming);
    } else {
      std::fill(incoming.begin(), incoming.end(), 0);
    }
    advance_slot(state, topo, sched, incoming);
    kernels::add_in_place(rec.arrivals, incoming);
    total_queue += kernels::sum(incoming);
  }

  rec.avg_total_queue = measured / static_cast<double>(total_slots - warmup_slots);
  rec.third_quarter_mean_queue = q3 / static_cast<double>(std::max<std::int64_t>(q4_begin - q3_begin, 1));
  rec.last_quarter_mean_queue = q4 / static_cast<double>(std::max<std::int64_t>(total_slots - q4_begin, 1));
  rec.final_backlog = state.total_packets();
  rec.departure_rate.resize(m);
  for (std::size_t l = 0; l < m; ++l) {
    rec.departure_rate[l] = static_cast<double>(rec.departures[l]) / static_cast<double>(total_slots);
  }
  return rec;
}

std::int64_t evacuation_lower_bound(const EvacInstance& instance) {
  const Topology& topo = instance.topo;
  std::int64_t bound = instance.max_degree();
  const int n = topo.node_count();
  // Dense link index for O(1) adjacency tests.
  std::vector<LinkId> index(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    const Link& e = topo.link(l);
    index[static_cast<std::size_t>(e.u) * n + e.v] = l;
    index[static_cast<std::size_t>(e.v) * n + e.u] = l;
  }
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    const Link& e = topo.link(l);
    const NodeId lo = std::min(e.u, e.v);
    const NodeId hi = std::max(e.u, e.v);
    for (LinkId a : topo.incident(lo)) {
      const NodeId w = topo.link(a).other(lo);
      if (w <= hi) continue;
      const LinkId b = index[static_cast<std::size_t>(hi) * n + w];
      if (b < 0) continue;
      const std::int64_t packets = instance.multiplicity[static_cast<std::size_t>(l)] +
                                   instance.multiplicity[static_cast<std::size_t>(a)] +
                                   instance.multiplicity[static_cast<std::size_t>(b)];
      bound = std::max(bound, packets);
    }
  }
  return bound;
}

std::vector<FrameViolation> check_frame_drain(const std::vector<TraceEntry>& trace) {
  std::vector<FrameViolation> out;
  if (trace.empty()) return out;
  auto delta_at = [&](std::int64_t slot) -> std::int64_t {
    // Past the end of the run every queue is empty.
    if (slot >= static_cast<std::int64_t>(trace.size())) return 0;
    return trace[static_cast<std::size_t>(slot)].delta;
  };
  const auto slots = static_cast<std::int64_t>(trace.size());
  for (std::int64_t start = 0; start < slots; start += 3) {
    const std::int64_t begin = delta_at(start);
    if (begin < 2) continue;
    const std::int64_t end = delta_at(start + 3);
    if (end > begin - 2) out.push_back({start / 3, begin, end});
  }
  return out;
}

std::optional<std::vector<std::uint8_t>> bipartition(const Topology& topo) {
  const auto n = static_cast<std::size_t>(topo.node_count());
  std::vector<std::int8_t> side(n, -1);
  std::queue<NodeId> frontier;
  for (std::size_t s = 0; s < n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    frontier.push(static_cast<NodeId>(s));
    while (!frontier.empty()) {
      const NodeId x = frontier.front();
      frontier.pop();
      for (LinkId l : topo.incident(x)) {
        const NodeId y = topo.link(l).other(x);
        if (side[static_cast<std::size_t>(y)] < 0) {
          side[static_cast<std::size_t>(y)] = static_cast<std::int8_t>(1 - side[static_cast<std::size_t>(x)]);
          frontier.push(y);
        } else if (side[static_cast<std::size_t>(y)] == side[static_cast<std::size_t>(x)]) {
          return std::nullopt;
        }
      }
    }
  }
  return std::vector<std::uint8_t>(side.begin(), side.end());
}

bool is_bipartite(const Topology& topo) { return bipartition(topo).has_value(); }

StabilityVerdict assess_stability(const MetricsRecord& rec, double rate_tolerance, double trend_limit) {
  StabilityVerdict v;
  v.worst_ratio = rec.min_departure_ratio();
  v.rates_ok = v.worst_ratio >= 1.0 - rate_tolerance;
  if (rec.third_quarter_mean_queue > 0.0) {
    v.trend_ratio = rec.last_quarter_mean_queue / rec.third_quarter_mean_queue;
    v.trend_ok = v.trend_ratio <= trend_limit;
  } else {
    v.trend_ratio = rec.last_quarter_mean_queue > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    v.trend_ok = rec.last_quarter_mean_queue == 0.0;
  }
  return v;
}

}  // namespace linksched
