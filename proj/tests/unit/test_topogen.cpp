#include <doctest.h>

#include <queue>

#include "helpers.hpp"
#include "linksched/errors.hpp"
#include "linksched/network_state.hpp"
#include "linksched/topogen.hpp"

using namespace linksched;
using namespace testing_helpers;

namespace {

bool connected(const Topology& t) {
  if (t.node_count() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(t.node_count()), 0);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const NodeId x = q.front();
    q.pop();
    for (LinkId l : t.incident(x)) {
      const NodeId y = t.link(l).other(x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++count;
        q.push(y);
      }
    }
  }
  return count == t.node_count();
}

bool has_triangle(const Topology& t) {
  for (const Link& e : t.links()) {
    for (LinkId l : t.incident(e.u)) {
      const NodeId w = t.link(l).other(e.u);
      if (w != e.v && t.find_link(w, e.v)) return true;
    }
  }
  return false;
}

std::vector<std::int64_t> workloads(const EvacInstance& inst) {
  return node_workloads(NetworkState::with_queues(inst.topo, inst.multiplicity), inst.topo);
}

}  // namespace

TEST_CASE("gen_grid") {
  const Topology g = gen_grid(4, 4);
  CHECK(g.node_count() == 16);
  CHECK(g.link_count() == 24);
  CHECK(gen_grid(2, 2).link_count() == 4);
  CHECK(gen_grid(3, 5).link_count() == 3 * 4 + 5 * 2);
  CHECK_THROWS_AS(gen_grid(1, 5), ParameterError);
  CHECK(g.find_link(0, 1).has_value());
  CHECK(g.find_link(0, 4).has_value());
  CHECK_FALSE(g.find_link(3, 4).has_value());
}

TEST_CASE("gen_path_special") {
  const EvacInstance p3 = gen_path_special(3);
  CHECK(p3.topo.node_count() == 7);
  CHECK(p3.multiplicity == std::vector<std::int64_t>{3, 1, 3, 1, 3, 1});
  CHECK(p3.max_degree() == 4);
  CHECK(gen_path_special(100).max_degree() == 101);
  const EvacInstance p1 = gen_path_special(1);
  CHECK(p1.topo.node_count() == 3);
  CHECK(p1.multiplicity == std::vector<std::int64_t>{1, 1});
  CHECK(p1.max_degree() == 2);
  CHECK_THROWS_AS(gen_path_special(0), ParameterError);
}

TEST_CASE("gen_special_spider") {
  const EvacInstance s = gen_special_spider(3);
  CHECK(s.topo.node_count() == 7);
  CHECK(s.topo.link_count() == 6);
  CHECK(s.multiplicity == std::vector<std::int64_t>{1, 3, 1, 3, 1, 3});
  CHECK(s.max_degree() == 4);
  CHECK(workloads(s) == std::vector<std::int64_t>{3, 4, 3, 4, 3, 4, 3});
  CHECK(gen_special_spider(100).max_degree() == 101);
  CHECK(gen_special_spider(1).max_degree() == 2);
}

TEST_CASE("gen_triangular_mesh") {
  const Topology m = gen_triangular_mesh(30, 7);
  CHECK(m.node_count() == 30);
  CHECK(m.link_count() >= 60);
  CHECK(m.link_count() <= 90);
  CHECK(connected(m));
  CHECK(has_triangle(m));
  CHECK(m == gen_triangular_mesh(30, 7));
  const Topology t = gen_triangular_mesh(3, 1);
  CHECK(t.link_count() == 3);
  CHECK(has_triangle(t));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Topology x = gen_triangular_mesh(30, seed);
    CHECK(connected(x));
    CHECK(x.link_count() <= 3 * 30 - 6);
  }
  CHECK_THROWS_AS(gen_triangular_mesh(2, 1), ParameterError);
}

TEST_CASE("gen_random_connected") {
  const Topology r = gen_random_connected(100, 248, 3);
  CHECK(r.node_count() == 100);
  CHECK(r.link_count() == 248);
  CHECK(connected(r));
  const Topology tree = gen_random_connected(5, 4, 9);
  CHECK(tree.link_count() == 4);
  CHECK(connected(tree));
  CHECK(gen_random_connected(4, 6, 1).link_count() == 6);
  CHECK_THROWS_AS(gen_random_connected(4, 7, 1), ParameterError);
  CHECK_THROWS_AS(gen_random_connected(4, 2, 1), ParameterError);
  CHECK(gen_random_connected(100, 248, 3) == r);
  for (std::uint64_t seed = 0; seed < 30; ++seed) CHECK(connected(gen_random_connected(20, 19, seed)));
}

TEST_CASE("gen_regular_multigraph") {
  const EvacInstance g = gen_regular_multigraph(50, 20, 1);
  CHECK(workloads(g) == std::vector<std::int64_t>(50, 20));
  CHECK(g.max_degree() == 20);
  const EvacInstance two = gen_regular_multigraph(2, 4, 5);
  CHECK(two.topo.link_count() == 1);
  CHECK(two.multiplicity == std::vector<std::int64_t>{4});
  CHECK_THROWS_AS(gen_regular_multigraph(3, 3, 1), ParameterError);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const EvacInstance x = gen_regular_multigraph(9, 80, seed);
    CHECK(workloads(x) == std::vector<std::int64_t>(9, 80));
  }
}

TEST_CASE("assign_random_multiplicities") {
  const Topology g = gen_grid(4, 4);
  const EvacInstance zero = assign_random_multiplicities(g, 0, 1);
  CHECK(zero.total_packets() == 0);
  CHECK(run_evacuation(zero, Policy::nsb).evac_time == 0);
  const EvacInstance a = assign_random_multiplicities(g, 50, 4);
  CHECK(a.multiplicity == assign_random_multiplicities(g, 50, 4).multiplicity);
  for (auto y : a.multiplicity) CHECK((y >= 0 && y <= 50));
  CHECK_THROWS_AS(assign_random_multiplicities(g, -1, 1), ParameterError);
  // rand100.50 lands in the expected regime (reference draw: 366)
  const EvacInstance r = assign_random_multiplicities(gen_random_connected(100, 248, 1), 50, 1);
  CHECK(r.max_degree() > 200);
  CHECK(r.max_degree() < 500);
}

TEST_CASE("parse_dimacs") {
  const EvacInstance t = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  CHECK(t.topo.node_count() == 3);
  CHECK(t.total_packets() == 3);
  CHECK(t.max_degree() == 2);

  const EvacInstance dup = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 2 3\n");
  CHECK(dup.topo.link_count() == 2);
  CHECK(dup.multiplicity == std::vector<std::int64_t>{2, 1});

  auto line_of = [](const char* text) {
    try {
      parse_dimacs(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("p edge 3 1\ne 1 4\n") == 2);
  CHECK(line_of("p edge 3 1\ne 1 x\n") == 2);
  CHECK(line_of("c\np edge 3 2\ne 1 2\n") == 3);
  CHECK(line_of("p edge 3 1\nq 1 2\n") == 2);
  CHECK(line_of("p edge 3 1\ne 2 2\n") == 2);
  CHECK(line_of("e 1 2\n") == 1);
  CHECK_THROWS_AS(parse_dimacs("c nothing\n"), ParseError);
}

TEST_CASE("dimacs and instance formats round-trip") {
  Rng rng(12);
  for (int it = 0; it < 30; ++it) {
    const Topology t = gen_random_connected(12, 20, rng());
    const EvacInstance inst = assign_random_multiplicities(t, 4, rng());
    const EvacInstance back = parse_instance(serialize_instance(inst));
    CHECK(back.topo == inst.topo);
    CHECK(back.multiplicity == inst.multiplicity);

    // canonical for DIMACS: every link carries a packet
    EvacInstance canon = inst;
    for (auto& y : canon.multiplicity) y += 1;
    const EvacInstance d = parse_dimacs(serialize_dimacs(canon));
    CHECK(d.topo == canon.topo);
    CHECK(d.multiplicity == canon.multiplicity);
  }
}

TEST_CASE("parse_instance errors") {
  CHECK_NOTHROW(parse_instance("# comment\n3 2\n0 1 4\n\n1 2 0\n"));
  CHECK_THROWS_AS(parse_instance("3 2\n0 1 4\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("3 1\n0 3 4\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("3 1\n0 1 -4\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("3 2\n0 1 1\n1 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("3 1\n1 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance(""), ParseError);
}
