#include "linksched/oracle.hpp"

#include <string>
#include <vector>

#include "linksched/errors.hpp"

namespace linksched {
namespace {

struct Search {
  const Topology& topo;
  std::vector<LinkId> links;
  OracleScoring scoring;
  std::span<const std::int64_t> weights;
  std::vector<std::uint8_t> used;
  Matching current;
  std::int64_t current_score = 0;
  OracleResult best;

  std::int64_t gain(LinkId l) const {
    const Link& e = topo.link(l);
    if (scoring == OracleScoring::edge_sum) return weights[static_cast<std::size_t>(l)];
    return weights[static_cast<std::size_t>(e.u)] + weights[static_cast<std::size_t>(e.v)];
  }

  // Each link is either skipped or taken (when both ends are free).
  void run(std::size_t idx) {
    if (idx == links.size()) {
      if (current_score > best.best_score) {
        best.best_score = current_score;
        best.matching = current;
      }
      return;
    }
    const LinkId l = links[idx];
    const Link& e = topo.link(l);
    if (!used[static_cast<std::size_t>(e.u)] && !used[static_cast<std::size_t>(e.v)]) {
      used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
      current.push_back(l);
      current_score += gain(l);
      run(idx + 1);
      current_score -= gain(l);
      current.pop_back();
      used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 0;
    }
    run(idx + 1);
  }
};

}  // namespace

OracleResult brute_force_matching_oracle(const Topology& topo, std::span<const std::uint8_t> eligible,
                                         OracleScoring scoring, std::span<const std::int64_t> weights) {
  if (eligible.size() != static_cast<std::size_t>(topo.link_count())) {
    throw UsageError("eligibility mask size does not match link count");
  }
  const std::size_t expected =
      scoring == OracleScoring::edge_sum ? static_cast<std::size_t>(topo.link_count())
                                         : static_cast<std::size_t>(topo.node_count());
  if (weights.size() != expected) throw UsageError("oracle weight vector has the wrong size");

  Search s{topo, {}, scoring, weights, std::vector<std::uint8_t>(static_cast<std::size_t>(topo.node_count()), 0),
           {}, 0, {}};
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    if (eligible[static_cast<std::size_t>(l)]) s.links.push_back(l);
  }
  if (static_cast<int>(s.links.size()) > kOracleMaxLinks) {
    throw UsageError("oracle limited to " + std::to_string(kOracleMaxLinks) + " eligible links, got " +
                     std::to_string(s.links.size()));
  }
  s.run(0);
  return s.best;
}

bool oracle_can_cover(const Topology& topo, std::span<const std::uint8_t> eligible,
                      std::span<const NodeId> nodes) {
  std::vector<std::int64_t> indicator(static_cast<std::size_t>(topo.node_count()), 0);
  for (NodeId v : nodes) indicator[static_cast<std::size_t>(v)] = 1;
  std::int64_t target = 0;
  for (auto x : indicator) target += x;
  const OracleResult r = brute_force_matching_oracle(topo, eligible, OracleScoring::matched_node_sum, indicator);
  return r.best_score == target;
}

}  // namespace linksched
