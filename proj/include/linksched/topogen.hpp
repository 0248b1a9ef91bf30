#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "linksched/engine.hpp"
#include "linksched/topology.hpp"

namespace linksched {

/// rows x cols lattice; node (r, c) has id r*cols + c.
Topology gen_grid(int rows, int cols);

/// Path of 2N links on 2N+1 nodes, multiplicities N,1,N,1,... from node 0.
EvacInstance gen_path_special(int n);

/// The 2N+1 node spider where link-based schedulers take about 2N slots:
/// a hub joined to N inner nodes by 1-packet links, each inner node joined to
/// its own leaf by an N-packet link. Δ(0) = N + 1.
EvacInstance gen_special_spider(int n);

/// Delaunay triangulation over `target_nodes` random integer points.
Topology gen_triangular_mesh(int target_nodes, std::uint64_t seed);

/// Uniform random labelled spanning tree plus uniformly chosen extra links.
Topology gen_random_connected(int n, int m, std::uint64_t seed);

/// Configuration-model multigraph in which every node has workload d.
EvacInstance gen_regular_multigraph(int n, int d, std::uint64_t seed);

/// I.i.d. uniform multiplicities on {0..max_y}.
EvacInstance assign_random_multiplicities(const Topology& topo, std::int64_t max_y, std::uint64_t seed);

/// DIMACS .col text: one packet per "e" line, 1-based ids rebased to 0.
EvacInstance parse_dimacs(std::string_view text);

/// DIMACS .col text with each link repeated `multiplicity` times.
std::string serialize_dimacs(const EvacInstance& instance);

/// Plain instance format: a "n m" header, then m lines "u v mult" (0-based).
/// Blank lines and lines starting with '#' are ignored.
EvacInstance parse_instance(std::string_view text);
std::string serialize_instance(const EvacInstance& instance);

std::string read_file(const std::string& path);

}  // namespace linksched
