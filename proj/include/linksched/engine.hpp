#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linksched/schedulers.hpp"
#include "linksched/topology.hpp"
#include "linksched/traffic.hpp"

namespace linksched {

/// A loopless multigraph: topology plus initial packets per link.
struct EvacInstance {
  Topology topo;
  std::vector<std::int64_t> multiplicity;

  std::int64_t total_packets() const;
  std::int64_t max_degree() const;  // Δ(0)
};

struct TraceEntry {
  std::int64_t slot;
  std::int64_t delta;          // Δ at the start of the slot
  std::int64_t schedule_size;  // links served in the slot (0 for the final entry)
};

enum class RunMode { evacuation, throughput };

struct MetricsRecord {
  RunMode mode = RunMode::evacuation;
  Policy policy = Policy::nsb;

  // evacuation
  std::int64_t evac_time = 0;
  std::int64_t delta0 = 0;
  /// One entry per slot plus a terminal entry at slot evac_time (Δ = 0).
  std::vector<TraceEntry> trace;

  // throughput
  std::int64_t total_slots = 0;
  std::int64_t warmup_slots = 0;
  double avg_total_queue = 0.0;
  std::vector<double> departure_rate;     // D_l(K) / K
  std::vector<std::int64_t> arrivals;     // A_l(K)
  std::vector<std::int64_t> departures;   // D_l(K)
  std::int64_t final_backlog = 0;
  double third_quarter_mean_queue = 0.0;
  double last_quarter_mean_queue = 0.0;

  /// min over links with arrivals of D_l / A_l; 1 when nothing arrived.
  double min_departure_ratio() const;
};

struct EvacuationOptions {
  bool record_trace = true;
  /// Safety stop; exceeded only by a broken scheduler.
  std::optional<std::int64_t> max_slots;
};

/// Drains the instance with no arrivals.
MetricsRecord run_evacuation(const EvacInstance& instance, Policy policy, const EvacuationOptions& opts = {});

/// Same loop driven by an arbitrary schedule function (used for mutation tests).
template <class ScheduleFn>
MetricsRecord run_evacuation_with(const EvacInstance& instance, Policy label, ScheduleFn&& fn,
                                  const EvacuationOptions& opts = {});

/// Slotted simulation from empty queues with i.i.d. arrivals.
MetricsRecord run_throughput(const Topology& topo, Policy policy, const TrafficModel& traffic,
                             std::int64_t total_slots, std::int64_t warmup_slots);

/// max(Δ(0), largest packet count on any triangle).
std::int64_t evacuation_lower_bound(const EvacInstance& instance);

struct FrameViolation {
  std::int64_t frame;
  std::int64_t start_delta;
  std::int64_t end_delta;
};

/// Every three-slot frame starting with Δ >= 2 must end with Δ <= start - 2.
std::vector<FrameViolation> check_frame_drain(const std::vector<TraceEntry>& trace);

/// Two-colouring of the topology, or nullopt if it has an odd cycle.
std::optional<std::vector<std::uint8_t>> bipartition(const Topology& topo);
bool is_bipartite(const Topology& topo);

/// Rate-stability summary for a throughput run: departure/arrival ratio on
/// every link and the last-quarter vs third-quarter queue trend.
struct StabilityVerdict {
  bool rates_ok = false;
  bool trend_ok = false;
  double worst_ratio = 1.0;
  double trend_ratio = 0.0;
};
StabilityVerdict assess_stability(const MetricsRecord& rec, double rate_tolerance, double trend_limit = 1.2);

}  // namespace linksched

#include "linksched/detail/engine_impl.hpp"
