#include <doctest.h>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/maximum_weighted_matching.hpp>

#include <numeric>

#include "helpers.hpp"
#include "linksched/errors.hpp"
#include "linksched/matching.hpp"
#include "linksched/oracle.hpp"

using namespace linksched;
using namespace testing_helpers;

TEST_CASE("max_weight_matching examples") {
  const Topology p4 = path_topology(4);
  const std::vector<std::int64_t> w = {2, 3, 2, 3};
  SUBCASE("no eligible links") {
    const std::vector<std::uint8_t> none(4, 0);
    CHECK(max_weight_matching({&p4, none, w}).empty());
  }
  SUBCASE("path (2,3,2,3)") {
    const auto e = all_eligible(p4);
    const Matching m = max_weight_matching({&p4, e, w});
    CHECK(m == Matching{1, 3});
    CHECK(edge_weight_sum(m, w) == 6);
  }
  SUBCASE("triangle ties go to the lowest link id") {
    const Topology t = triangle();
    const auto e = all_eligible(t);
    CHECK(max_weight_matching({&t, e, std::vector<std::int64_t>{1, 1, 1}}) == Matching{0});
  }
  SUBCASE("zero weights still give a maximal matching") {
    const auto e = all_eligible(p4);
    const Matching m = max_weight_matching({&p4, e, std::vector<std::int64_t>(4, 0)});
    CHECK(is_maximal(p4, e, m));
  }
}

TEST_CASE("max_vertex_weight_matching examples") {
  SUBCASE("star (5; 1,2,3)") {
    const Topology s = star_topology(3);
    const std::vector<std::int64_t> nw = {5, 1, 2, 3};
    const Matching m = max_vertex_weight_matching(s, all_eligible(s), nw);
    CHECK(m == Matching{2});
    CHECK(matched_node_weight_sum(s, m, nw) == 8);
  }
  SUBCASE("single edge with zero weights") {
    const Topology t(2, {{0, 1}});
    CHECK(max_vertex_weight_matching(t, all_eligible(t), std::vector<std::int64_t>{0, 0}) == Matching{0});
  }
  SUBCASE("negative weights rejected") {
    const Topology t(2, {{0, 1}});
    CHECK_THROWS_AS(max_vertex_weight_matching(t, all_eligible(t), std::vector<std::int64_t>{-1, 0}), UsageError);
  }
}

TEST_CASE("greedy and first-fit matchings") {
  const Topology p3 = path_topology(3);
  const auto e = all_eligible(p3);
  CHECK(greedy_maximal_matching({&p3, e, std::vector<std::int64_t>{1, 3, 1}}) == Matching{1});
  CHECK(greedy_maximal_matching({&p3, e, std::vector<std::int64_t>{3, 1, 3}}) == Matching{0, 2});
  CHECK(greedy_maximal_matching({&p3, std::vector<std::uint8_t>(3, 0), std::vector<std::int64_t>{3, 1, 3}}).empty());

  const Topology one(2, {{0, 1}});
  CHECK(maximal_matching(one, all_eligible(one)) == Matching{0});
  const Topology p2 = path_topology(2);
  CHECK(maximal_matching(p2, all_eligible(p2)) == Matching{0});
  const Topology s3 = star_topology(3);
  CHECK(maximal_matching(s3, all_eligible(s3)).size() == 1);
}

TEST_CASE("oracle examples and bound") {
  const Topology empty(4, {});
  const OracleResult r0 = brute_force_matching_oracle(empty, {}, OracleScoring::edge_sum, {});
  CHECK(r0.best_score == 0);
  CHECK(r0.matching.empty());

  const Topology p4 = path_topology(4);
  CHECK(brute_force_matching_oracle(p4, all_eligible(p4), OracleScoring::edge_sum,
                                    std::vector<std::int64_t>{2, 3, 2, 3})
            .best_score == 6);
  const Topology s3 = star_topology(3);
  CHECK(brute_force_matching_oracle(s3, all_eligible(s3), OracleScoring::matched_node_sum,
                                    std::vector<std::int64_t>{5, 1, 2, 3})
            .best_score == 8);

  const Topology big = path_topology(21);
  CHECK_THROWS_AS(brute_force_matching_oracle(big, all_eligible(big), OracleScoring::edge_sum,
                                              std::vector<std::int64_t>(21, 1)),
                  UsageError);
  // ineligible links do not count toward the bound
  std::vector<std::uint8_t> e(21, 1);
  e[0] = 0;
  CHECK_NOTHROW(brute_force_matching_oracle(big, e, OracleScoring::edge_sum, std::vector<std::int64_t>(21, 1)));
}

TEST_CASE("exact matchers agree with the oracle; greedy within half") {
  Rng rng(2024);
  for (int it = 0; it < 600; ++it) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 7));
    Topology t = gnp(n, 0.6, rng);
    if (t.link_count() > kOracleMaxLinks) continue;
    std::vector<std::uint8_t> e(static_cast<std::size_t>(t.link_count()));
    for (auto& x : e) x = uniform_below(rng, 5) != 0;
    std::vector<std::int64_t> w(e.size());
    for (auto& x : w) x = 1 + static_cast<std::int64_t>(uniform_below(rng, 9));
    std::vector<std::int64_t> nw(static_cast<std::size_t>(n));
    for (auto& x : nw) x = static_cast<std::int64_t>(uniform_below(rng, 10));

    const std::int64_t best = brute_force_matching_oracle(t, e, OracleScoring::edge_sum, w).best_score;
    const Matching mw = max_weight_matching({&t, e, w});
    CHECK(edge_weight_sum(mw, w) == best);
    const Matching g = greedy_maximal_matching({&t, e, w});
    CHECK(2 * edge_weight_sum(g, w) >= best);
    for (const Matching& m : {mw, g, maximal_matching(t, e), max_vertex_weight_matching(t, e, nw)}) {
      CHECK(is_matching(t, m));
      CHECK(is_maximal(t, e, m));
      for (LinkId l : m) CHECK(e[static_cast<std::size_t>(l)]);
    }
    const Matching mv = max_vertex_weight_matching(t, e, nw);
    CHECK(matched_node_weight_sum(t, mv, nw) ==
          brute_force_matching_oracle(t, e, OracleScoring::matched_node_sum, nw).best_score);
  }
}

TEST_CASE("blossom agrees with Boost on larger graphs") {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                  boost::property<boost::edge_weight_t, long long>>;
  Rng rng(77);
  for (int it = 0; it < 40; ++it) {
    const int n = 10 + static_cast<int>(uniform_below(rng, 50));
    const Topology t = gnp(n, 0.05 + 0.5 * uniform_unit(rng), rng);
    std::vector<std::int64_t> w(static_cast<std::size_t>(t.link_count()));
    for (auto& x : w) x = 1 + static_cast<std::int64_t>(uniform_below(rng, it % 2 ? 1000 : 4));
    G g(static_cast<std::size_t>(n));
    for (LinkId l = 0; l < t.link_count(); ++l) {
      boost::add_edge(static_cast<std::size_t>(t.link(l).u), static_cast<std::size_t>(t.link(l).v),
                      static_cast<long long>(w[static_cast<std::size_t>(l)]), g);
    }
    std::vector<boost::graph_traits<G>::vertex_descriptor> mate(static_cast<std::size_t>(n));
    boost::maximum_weighted_matching(g, &mate[0]);
    const long long boost_total = boost::matching_weight_sum(g, &mate[0]);
    const Matching m = max_weight_matching({&t, all_eligible(t), w});
    CHECK(is_matching(t, m));
    CHECK(edge_weight_sum(m, w) == boost_total);
  }
}

TEST_CASE("blossom on hand-built odd cycles") {
  // 5-cycle with a pendant: the optimum must expand the blossom
  const std::vector<WeightedEdge> edges = {{0, 1, 6}, {1, 2, 6}, {2, 3, 6}, {3, 4, 6}, {4, 0, 6}, {0, 5, 7}};
  const auto mate = blossom_max_weight_matching(6, edges);
  CHECK(mate[0] == 5);
  CHECK(mate[5] == 0);
  int pairs = 0;
  for (int v = 0; v < 6; ++v) pairs += mate[static_cast<std::size_t>(v)] >= 0;
  CHECK(pairs == 6);
}

TEST_CASE("the s heaviest coverable nodes are covered") {
  Rng rng(31);
  int exercised = 0;
  for (int it = 0; it < 400; ++it) {
    const int n = 3 + static_cast<int>(uniform_below(rng, 6));
    const Topology t = gnp(n, 0.5, rng);
    if (t.link_count() == 0 || t.link_count() > kOracleMaxLinks) continue;
    std::vector<std::int64_t> nw(static_cast<std::size_t>(n));
    for (auto& x : nw) x = static_cast<std::int64_t>(uniform_below(rng, 4));  // many ties
    const auto e = all_eligible(t);
    const auto covered = covered_nodes(t, max_vertex_weight_matching(t, e, nw));
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return nw[static_cast<std::size_t>(a)] > nw[static_cast<std::size_t>(b)];
    });
    for (int s = 1; s <= n; ++s) {
      const std::span<const NodeId> top(order.data(), static_cast<std::size_t>(s));
      if (!oracle_can_cover(t, e, top)) break;
      ++exercised;
      for (NodeId x : top) CHECK(covered[static_cast<std::size_t>(x)]);
    }
  }
  CHECK(exercised > 500);
}
