#include "linksched/matching.hpp"

#include <algorithm>
#include <limits>

#include "linksched/errors.hpp"

namespace linksched {
namespace {

constexpr std::int64_t kWeightBudget = std::numeric_limits<std::int64_t>::max() / 8;

void check_view(const Topology& topo, std::span<const std::uint8_t> eligible) {
  if (eligible.size() != static_cast<std::size_t>(topo.link_count())) {
    throw UsageError("eligibility mask size does not match link count");
  }
}

}  // namespace

void complete_to_maximal(const Topology& topo, std::span<const std::uint8_t> eligible, Matching& m) {
  std::vector<std::uint8_t> used = covered_nodes(topo, m);
  bool added = false;
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    if (!eligible[static_cast<std::size_t>(l)]) continue;
    const Link& e = topo.link(l);
    if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) continue;
    used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
    m.push_back(l);
    added = true;
  }
  if (added) std::sort(m.begin(), m.end());
}

Matching max_weight_matching(const WeightedGraphView& view) {
  const Topology& topo = *view.topo;
  check_view(topo, view.eligible);
  if (view.edge_weight.size() != static_cast<std::size_t>(topo.link_count())) {
    throw UsageError("edge weight vector size does not match link count");
  }

  // Compact to the nodes touched by eligible links.
  std::vector<std::int32_t> local(static_cast<std::size_t>(topo.node_count()), -1);
  std::vector<LinkId> edge_link;
  std::int32_t vertex_count = 0;
  std::int64_t max_w = 0;
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    if (!view.eligible[static_cast<std::size_t>(l)]) continue;
    const std::int64_t w = view.edge_weight[static_cast<std::size_t>(l)];
    if (w < 0) throw UsageError("negative edge weight");
    max_w = std::max(max_w, w);
    edge_link.push_back(l);
    for (NodeId x : {topo.link(l).u, topo.link(l).v}) {
      if (local[static_cast<std::size_t>(x)] < 0) local[static_cast<std::size_t>(x)] = vertex_count++;
    }
  }
  Matching out;
  if (edge_link.empty()) return out;

  // Tie-break toward lower link ids: scale the objective by K and add a
  // per-link bonus whose total over any matching stays below K.
  const auto m_e = static_cast<std::int64_t>(edge_link.size());
  const std::int64_t scale = (vertex_count / 2) * m_e + 1;
  const bool perturb = max_w <= kWeightBudget / scale;

  std::vector<WeightedEdge> edges;
  edges.reserve(edge_link.size());
  for (std::size_t k = 0; k < edge_link.size(); ++k) {
    const Link& e = topo.link(edge_link[k]);
    const std::int64_t w = view.edge_weight[static_cast<std::size_t>(edge_link[k])];
    const std::int64_t bonus = m_e - static_cast<std::int64_t>(k);
    edges.push_back({local[static_cast<std::size_t>(e.u)], local[static_cast<std::size_t>(e.v)],
                     perturb ? w * scale + bonus : w});
  }
  const std::vector<std::int32_t> mate = blossom_max_weight_matching(vertex_count, edges);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (mate[static_cast<std::size_t>(edges[k].u)] == edges[k].v) out.push_back(edge_link[k]);
  }
  complete_to_maximal(topo, view.eligible, out);
  return out;
}

Matching max_vertex_weight_matching(const Topology& topo, std::span<const std::uint8_t> eligible,
                                    std::span<const std::int64_t> node_weight) {
  check_view(topo, eligible);
  const auto n = static_cast<std::int64_t>(topo.node_count());
  if (node_weight.size() != static_cast<std::size_t>(n)) {
    throw UsageError("node weight vector size does not match node count");
  }
  std::int64_t max_w = 0;
  for (auto w : node_weight) {
    if (w < 0) throw UsageError("negative node weight");
    max_w = std::max(max_w, w);
  }
  // Node bonus n - i breaks weight ties toward lower ids; the bonuses of all
  // nodes sum to less than the scale, so optimality in the original weights
  // is preserved.
  const std::int64_t scale = n * (n + 1) / 2 + 1;
  const bool perturb = max_w <= kWeightBudget / (4 * scale);

  std::vector<std::int64_t> edge_weight(static_cast<std::size_t>(topo.link_count()), 0);
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    const Link& e = topo.link(l);
    auto node_term = [&](NodeId x) {
      const std::int64_t w = node_weight[static_cast<std::size_t>(x)];
      return perturb ? w * scale + (n - x) : w;
    };
    edge_weight[static_cast<std::size_t>(l)] = node_term(e.u) + node_term(e.v);
  }
  return max_weight_matching({&topo, eligible, edge_weight});
}

Matching greedy_maximal_matching(const WeightedGraphView& view) {
  const Topology& topo = *view.topo;
  check_view(topo, view.eligible);
  std::vector<LinkId> order;
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    if (view.eligible[static_cast<std::size_t>(l)]) order.push_back(l);
  }
  std::stable_sort(order.begin(), order.end(), [&](LinkId a, LinkId b) {
    return view.edge_weight[static_cast<std::size_t>(a)] > view.edge_weight[static_cast<std::size_t>(b)];
  });
  std::vector<std::uint8_t> used(static_cast<std::size_t>(topo.node_count()), 0);
  Matching out;
  for (LinkId l : order) {
    const Link& e = topo.link(l);
    if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) continue;
    used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
    out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Matching maximal_matching(const Topology& topo, std::span<const std::uint8_t> eligible) {
  check_view(topo, eligible);
  Matching out;
  complete_to_maximal(topo, eligible, out);
  return out;
}

std::vector<std::uint8_t> covered_nodes(const Topology& topo, const Matching& m) {
  std::vector<std::uint8_t> used(static_cast<std::size_t>(topo.node_count()), 0);
  for (LinkId l : m) {
    used[static_cast<std::size_t>(topo.link(l).u)] = 1;
    used[static_cast<std::size_t>(topo.link(l).v)] = 1;
  }
  return used;
}

bool is_matching(const Topology& topo, const Matching& m) {
  std::vector<std::uint8_t> used(static_cast<std::size_t>(topo.node_count()), 0);
  for (LinkId l : m) {
    if (l < 0 || l >= topo.link_count()) return false;
    const Link& e = topo.link(l);
    if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) return false;
    used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
  }
  return true;
}

bool is_maximal(const Topology& topo, std::span<const std::uint8_t> eligible, const Matching& m) {
  const std::vector<std::uint8_t> used = covered_nodes(topo, m);
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    if (!eligible[static_cast<std::size_t>(l)]) continue;
    const Link& e = topo.link(l);
    if (!used[static_cast<std::size_t>(e.u)] && !used[static_cast<std::size_t>(e.v)]) return false;
  }
  return true;
}

std::int64_t edge_weight_sum(const Matching& m, std::span<const std::int64_t> edge_weight) {
  std::int64_t total = 0;
  for (LinkId l : m) total += edge_weight[static_cast<std::size_t>(l)];
  return total;
}

std::int64_t matched_node_weight_sum(const Topology& topo, const Matching& m,
                                     std::span<const std::int64_t> node_weight) {
  std::int64_t total = 0;
  for (LinkId l : m) {
    total += node_weight[static_cast<std::size_t>(topo.link(l).u)];
    total += node_weight[static_cast<std::size_t>(topo.link(l).v)];
  }
  return total;
}

}  // namespace linksched
