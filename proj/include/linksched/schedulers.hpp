#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "linksched/network_state.hpp"
#include "linksched/topology.hpp"

namespace linksched {

enum class Policy { nsb, lcnsb, mvm, mwm, gmm, mm };

inline constexpr std::array<Policy, 6> kAllPolicies = {Policy::nsb, Policy::lcnsb, Policy::mvm,
                                                       Policy::mwm, Policy::gmm,   Policy::mm};

/// CLI spelling: nsb | lcnsb | mvm | mwm | gmm | mm.
std::string_view policy_name(Policy p);
std::optional<Policy> parse_policy(std::string_view name);

/// Comma-separated policy list; throws UsageError on unknown or empty input.
std::vector<Policy> parse_policy_list(std::string_view csv);

/// U_i(k) for one node.
std::uint8_t service_indicator(const NetworkState& state, NodeId i);

/// U_i(k) for every node.
std::vector<std::uint8_t> service_indicators(const NetworkState& state);

/// Node weights driving NSB: doubled workload for heavy nodes with U = 0.
std::vector<std::int64_t> nsb_weights(const NetworkState& state, const Topology& topo);

/// Five-level priorities driving LC-NSB. All ones when the network is empty.
std::vector<std::int64_t> lcnsb_weights(const NetworkState& state, const Topology& topo);

/// One slot's schedule under `policy`. Always a maximal matching over links
/// with a nonzero queue.
Matching schedule(Policy policy, const NetworkState& state, const Topology& topo);

}  // namespace linksched
