#pragma once

#include <vector>

#include "linksched/engine.hpp"
#include "linksched/random.hpp"
#include "linksched/topology.hpp"

namespace testing_helpers {

using namespace linksched;

inline Topology path_topology(int links) {
  std::vector<Link> v;
  for (int k = 0; k < links; ++k) v.push_back({k, k + 1});
  return Topology(links + 1, v);
}

inline Topology star_topology(int leaves) {
  std::vector<Link> v;
  for (int k = 1; k <= leaves; ++k) v.push_back({0, k});
  return Topology(leaves + 1, v);
}

inline Topology triangle() { return Topology(3, {{0, 1}, {1, 2}, {0, 2}}); }

/// G(n, p) with links in (u, v) lexicographic order.
inline Topology gnp(int n, double p, Rng& rng) {
  std::vector<Link> v;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (uniform_unit(rng) < p) v.push_back({a, b});
    }
  }
  return Topology(n, v);
}

inline std::vector<std::uint8_t> all_eligible(const Topology& t) {
  return std::vector<std::uint8_t>(static_cast<std::size_t>(t.link_count()), 1);
}

}  // namespace testing_helpers
