#include "linksched/topology.hpp"

#include <algorithm>
#include <string>

#include "linksched/errors.hpp"

namespace linksched {

Topology::Topology(int node_count, std::vector<Link> links)
    : node_count_(node_count), links_(std::move(links)) {
  if (node_count_ < 0) throw ParameterError("negative node count");
  std::vector<std::int32_t> deg(static_cast<std::size_t>(node_count_), 0);
  for (std::size_t l = 0; l < links_.size(); ++l) {
    const Link& e = links_[l];
    if (e.u < 0 || e.u >= node_count_ || e.v < 0 || e.v >= node_count_) {
      throw ParameterError("link " + std::to_string(l) + " has an endpoint outside [0, n)");
    }
    if (e.u == e.v) throw ParameterError("link " + std::to_string(l) + " is a self-loop");
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  offset_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
  for (int i = 0; i < node_count_; ++i) offset_[i + 1] = offset_[i] + deg[static_cast<std::size_t>(i)];
  adj_.resize(links_.size() * 2);
  std::vector<std::int32_t> fill(offset_.begin(), offset_.end() - 1);
  for (std::size_t l = 0; l < links_.size(); ++l) {
    adj_[static_cast<std::size_t>(fill[links_[l].u]++)] = static_cast<LinkId>(l);
    adj_[static_cast<std::size_t>(fill[links_[l].v]++)] = static_cast<LinkId>(l);
  }
  // Links are appended in id order, so each adjacency list is already sorted.
  for (int i = 0; i < node_count_; ++i) {
    std::vector<NodeId> nbrs;
    nbrs.reserve(static_cast<std::size_t>(offset_[i + 1] - offset_[i]));
    for (auto k = offset_[i]; k < offset_[i + 1]; ++k) nbrs.push_back(links_[adj_[k]].other(i));
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
      throw ParameterError("duplicate link at node " + std::to_string(i));
    }
  }
}

std::span<const LinkId> Topology::incident(NodeId i) const {
  if (i < 0 || i >= node_count_) throw UsageError("node id " + std::to_string(i) + " out of range");
  return {adj_.data() + offset_[i], adj_.data() + offset_[i + 1]};
}

std::optional<LinkId> Topology::find_link(NodeId a, NodeId b) const {
  for (LinkId l : incident(a)) {
    if (links_[static_cast<std::size_t>(l)].other(a) == b) return l;
  }
  return std::nullopt;
}

}  // namespace linksched
