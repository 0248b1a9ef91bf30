#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace linksched {

using NodeId = std::int32_t;
using LinkId = std::int32_t;

struct Link {
  NodeId u;
  NodeId v;

  NodeId other(NodeId x) const noexcept { return x == u ? v : u; }
  friend bool operator==(const Link&, const Link&) = default;
};

/// Immutable undirected simple graph: the interference structure.
///
/// Node ids are contiguous in [0, n). Link ids are positions in the link list.
/// Multiplicity lives in queues, never in the topology, so duplicate links and
/// self-loops are rejected at construction.
class Topology {
 public:
  Topology() = default;
  Topology(int node_count, std::vector<Link> links);

  int node_count() const noexcept { return node_count_; }
  int link_count() const noexcept { return static_cast<int>(links_.size()); }

  const Link& link(LinkId l) const { return links_.at(static_cast<std::size_t>(l)); }
  std::span<const Link> links() const noexcept { return links_; }

  /// L(i): ids of the links incident to node i, ascending.
  std::span<const LinkId> incident(NodeId i) const;

  std::optional<LinkId> find_link(NodeId a, NodeId b) const;

  int degree(NodeId i) const { return static_cast<int>(incident(i).size()); }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.node_count_ == b.node_count_ && a.links_ == b.links_;
  }

 private:
  int node_count_ = 0;
  std::vector<Link> links_;
  // CSR adjacency: incident links of node i are adj_[offset_[i] .. offset_[i+1]).
  std::vector<std::int32_t> offset_;
  std::vector<LinkId> adj_;
};

/// Schedule for one slot: link ids, ascending, pairwise node-disjoint.
using Matching = std::vector<LinkId>;

}  // namespace linksched
