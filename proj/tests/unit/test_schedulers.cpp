#include <doctest.h>

#include "helpers.hpp"
#include "linksched/errors.hpp"
#include "linksched/matching.hpp"
#include "linksched/oracle.hpp"
#include "linksched/schedulers.hpp"
#include "linksched/topogen.hpp"

using namespace linksched;
using namespace testing_helpers;

namespace {

// Spider family N=3 after the three leg links were served in slot 0.
NetworkState fig4b_state(const EvacInstance& inst) {
  NetworkState s = NetworkState::with_queues(inst.topo, inst.multiplicity);
  for (LinkId l : {1, 3, 5}) --s.queue[static_cast<std::size_t>(l)];
  s.slot = 1;
  for (NodeId i = 1; i <= 6; ++i) s.served_prev[static_cast<std::size_t>(i)] = 1;
  return s;
}

}  // namespace

TEST_CASE("policy names round-trip") {
  for (Policy p : kAllPolicies) CHECK(parse_policy(policy_name(p)) == p);
  CHECK_FALSE(parse_policy("NSB").has_value());
  CHECK(parse_policy_list("nsb,mwm") == std::vector<Policy>{Policy::nsb, Policy::mwm});
  CHECK_THROWS_AS(parse_policy_list(""), UsageError);
  CHECK_THROWS_AS(parse_policy_list("nsb,foo"), UsageError);
}

TEST_CASE("service_indicator") {
  const Topology t(2, {{0, 1}});
  NetworkState s = NetworkState::empty(t);
  CHECK(service_indicator(s, 0) == 0);

  s.slot = 5;  // last slot of frame 1
  s.served_prev = {1, 1};
  s.served_prev2 = {1, 0};
  CHECK(service_indicator(s, 0) == 1);  // served at 3 and 4
  CHECK(service_indicator(s, 1) == 0);  // served at 4 only

  s.slot = 4;  // middle slot reads only the previous slot
  CHECK(service_indicator(s, 1) == 1);
  s.slot = 3;  // first slot reads the last slot of the previous frame
  CHECK(service_indicator(s, 1) == 1);
  CHECK(service_indicators(s) == std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("nsb_weights on the spider after one served slot") {
  const EvacInstance inst = gen_special_spider(3);
  const NetworkState s = fig4b_state(inst);
  const auto w = nsb_weights(s, inst.topo);
  CHECK(w[0] == 6);  // hub: heavy, Q=3, U=0
  CHECK(w[1] == 3);  // inner node: heavy, Q=3, U=1
  CHECK(w[2] == 2);  // leaf: not heavy, Q=2
  // MVM under these weights matches the hub
  const auto covered = covered_nodes(inst.topo, schedule(Policy::nsb, s, inst.topo));
  CHECK(covered[0]);
}

TEST_CASE("nsb_weights else-branch and empty network") {
  // path 0-1-2 with queues (1, 3): Q = (1, 4, 3), n=3, delta=4, heavy iff 3Q >= 8
  const Topology t = path_topology(2);
  NetworkState s = NetworkState::with_queues(t, {1, 3});
  s.slot = 1;
  s.served_prev = {0, 1, 1};
  CHECK(nsb_weights(s, t) == std::vector<std::int64_t>{1, 4, 3});
  s.served_prev = {1, 0, 0};
  CHECK(nsb_weights(s, t) == std::vector<std::int64_t>{1, 8, 6});
  CHECK(nsb_weights(NetworkState::empty(t), t) == std::vector<std::int64_t>{0, 0, 0});
}

TEST_CASE("lcnsb_weights") {
  // star center Q=6 (critical), leaves 3,2,1 -> n=4, delta=6, heavy iff 4Q >= 18
  const Topology t = star_topology(3);
  NetworkState s = NetworkState::with_queues(t, {5, 1, 0});
  // Q = (6, 5, 1, 0)
  s.slot = 1;
  s.served_prev = {0, 1, 1, 0};
  CHECK(lcnsb_weights(s, t) == std::vector<std::int64_t>{5, 2, 1, 1});
  s.served_prev = {1, 0, 0, 1};
  CHECK(lcnsb_weights(s, t) == std::vector<std::int64_t>{3, 4, 1, 1});
  CHECK(lcnsb_weights(NetworkState::empty(t), t) == std::vector<std::int64_t>{1, 1, 1, 1});
}

TEST_CASE("schedule examples") {
  const Topology t = triangle();
  for (Policy p : kAllPolicies) CHECK(schedule(p, NetworkState::empty(t), t).empty());

  for (const EvacInstance& inst : {gen_special_spider(3), gen_path_special(3)}) {
    const NetworkState s0 = NetworkState::with_queues(inst.topo, inst.multiplicity);
    const Matching m = schedule(Policy::mwm, s0, inst.topo);
    CHECK(edge_weight_sum(m, s0.queue) == 9);
    for (LinkId l : m) CHECK(s0.queue[static_cast<std::size_t>(l)] == 3);
    CHECK(run_evacuation(inst, Policy::nsb).evac_time == 4);
  }
}

TEST_CASE("every policy emits a maximal matching over nonempty queues") {
  Rng rng(8);
  for (int it = 0; it < 300; ++it) {
    const Topology t = gnp(2 + static_cast<int>(uniform_below(rng, 12)), 0.45, rng);
    NetworkState s = NetworkState::empty(t);
    for (auto& q : s.queue) q = static_cast<std::int64_t>(uniform_below(rng, 4));
    s.slot = static_cast<std::int64_t>(uniform_below(rng, 9));
    for (auto& r : s.served_prev) r = static_cast<std::uint8_t>(uniform_below(rng, 2));
    for (auto& r : s.served_prev2) r = static_cast<std::uint8_t>(uniform_below(rng, 2));
    std::vector<std::uint8_t> e(s.queue.size());
    bool any = false;
    for (std::size_t l = 0; l < e.size(); ++l) any |= (e[l] = s.queue[l] > 0);
    for (Policy p : kAllPolicies) {
      const Matching m = schedule(p, s, t);
      CHECK_NOTHROW(validate_schedule(s, t, m));
      CHECK(is_maximal(t, e, m));
      CHECK(m.empty() == !any);
    }
    for (auto w : lcnsb_weights(s, t)) CHECK((w >= 1 && w <= 5));
  }
}

TEST_CASE("scaling NSB weights keeps the matched weight optimal") {
  Rng rng(19);
  for (int it = 0; it < 200; ++it) {
    const Topology t = gnp(3 + static_cast<int>(uniform_below(rng, 6)), 0.5, rng);
    if (t.link_count() == 0 || t.link_count() > kOracleMaxLinks) continue;
    NetworkState s = NetworkState::empty(t);
    for (auto& q : s.queue) q = static_cast<std::int64_t>(uniform_below(rng, 5));
    for (auto& r : s.served_prev) r = static_cast<std::uint8_t>(uniform_below(rng, 2));
    std::vector<std::uint8_t> e(s.queue.size());
    for (std::size_t l = 0; l < e.size(); ++l) e[l] = s.queue[l] > 0;
    auto w = nsb_weights(s, t);
    const std::int64_t c = 1 + static_cast<std::int64_t>(uniform_below(rng, 7));
    for (auto& x : w) x *= c;
    const Matching m = max_vertex_weight_matching(t, e, w);
    CHECK(matched_node_weight_sum(t, m, w) ==
          brute_force_matching_oracle(t, e, OracleScoring::matched_node_sum, w).best_score);
    // NSB's own schedule scores optimally under the unscaled weights
    const auto w1 = nsb_weights(s, t);
    CHECK(matched_node_weight_sum(t, schedule(Policy::nsb, s, t), w1) * c == matched_node_weight_sum(t, m, w));
  }
}
